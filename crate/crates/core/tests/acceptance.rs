//! One PASS/FAIL line per acceptance criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seamtqft::cobordism::builders::{self, Direction};
use seamtqft::cobordism::{product_with_circle, BuildOptions, Cobordism, Meom};
use seamtqft::evaluation::{eval, eval_all_colorings, eval_colored, eval_omega, EvalMode};
use seamtqft::frobenius::{BaseRing, Frobenius, RingTag};
use seamtqft::poly::{discriminant, parse_poly, Gaussian, GaussPoly, IntPoly, VarSet};
use seamtqft::surface::ClosedSeamedSurface;
use seamtqft::universal::{induced_matrix, standard_spanning, tqft, InducedMatrix, StateSpace};
use seamtqft::verify::{self, random_closing, random_word};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn e(s: &str) -> IntPoly {
    parse_poly(s, Some(VarSet::Elementary)).unwrap()
}

fn g(s: &str) -> GaussPoly {
    parse_poly(s, Some(VarSet::Elementary)).unwrap()
}

fn value(f: &ClosedSeamedSurface) -> IntPoly {
    eval(f).unwrap().value
}

fn show(m: &[Vec<GaussPoly>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn grid(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn sphere_values() -> Check {
    let (plain, dotted) = (value(&ClosedSeamedSurface::sphere(0)), value(&ClosedSeamedSurface::sphere(1)));
    ensure(plain.is_zero() && dotted.is_one(), || format!("got {plain} and {dotted}"))
}

fn genus_family() -> Check {
    let d = discriminant::<BigInt>();
    for n in 0..=4u32 {
        let dn = d.pow(n);
        let cases = [
            (2 * n, 0, IntPoly::zero(VarSet::Elementary)),
            (2 * n + 1, 0, dn.scale(&BigInt::from(2))),
            (2 * n, 1, dn.clone()),
            (2 * n + 1, 1, e("E1") * &dn),
        ];
        for (genus, dots, want) in cases {
            let got = value(&ClosedSeamedSurface::genus(genus, dots));
            ensure(got == want, || format!("genus {genus} with {dots} dots: {got} vs {want}"))?;
        }
    }
    let g3 = value(&ClosedSeamedSurface::genus(3, 0)).to_string();
    ensure(g3 == "2*E1^2 - 8*E2", || format!("genus 3: {g3}"))
}

fn belt_sphere() -> Check {
    let f = ClosedSeamedSurface::belt_sphere(1);
    ensure(value(&f).is_one(), || format!("value {}", value(&f)))?;
    let alpha = |s: &str| -> IntPoly { parse_poly(s, Some(VarSet::Alpha)).unwrap() };
    let diff = alpha("a2 - a1");
    let mut terms: Vec<String> = f
        .admissible_colorings()
        .iter()
        .map(|c| {
            let t = eval_colored(&f, c).unwrap().scale_poly(&diff);
            t.as_poly().map(|p| p.to_string()).unwrap_or_else(|| format!("non-polynomial {t}"))
        })
        .collect();
    terms.sort();
    let mut want = vec![alpha("-a1").to_string(), alpha("a2").to_string()];
    want.sort();
    ensure(terms == want, || format!("terms times (a2 - a1): {terms:?}"))
}

fn circle_products() -> Check {
    let pm = value(&product_with_circle(&Meom::from_words(&["+-"])));
    let pp = value(&product_with_circle(&Meom::from_words(&["++"])));
    ensure(pm == e("-2") && pp == e("2"), || format!("got {pm} and {pp}"))
}

fn gram_goldens() -> Check {
    let circle = StateSpace::new(&Meom::unmarked(1), standard_spanning(&Meom::unmarked(1)).unwrap(), EvalMode::Plain)
        .map_err(|x| x.to_string())?;
    ensure(show(&circle.gram) == grid(&[&["0", "1"], &["1", "E1"]]), || format!("{:?}", show(&circle.gram)))?;
    let two = StateSpace::new(&Meom::from_words(&["+-", "+-"]), builders::two_circle_six_elements(), EvalMode::Plain)
        .map_err(|x| x.to_string())?;
    let want = grid(&[
        &["0", "0", "0", "0", "1", "1"],
        &["0", "0", "1", "1", "E1", "E1"],
        &["0", "1", "0", "1", "E1", "E1"],
        &["0", "1", "1", "-2", "E1", "-E1"],
        &["1", "E1", "E1", "E1", "E1^2", "E1^2 - E2"],
        &["1", "E1", "E1", "-E1", "E1^2 - E2", "-E1^2 + 2*E2"],
    ]);
    ensure(show(&two.gram) == want, || format!("6x6: {:?}", show(&two.gram)))?;
    ensure(two.det() == g("4*E1^2 - 16*E2"), || format!("6x6 det {}", two.det()))?;
    let four = StateSpace::new(&Meom::from_words(&["+-+-"]), builders::alternating_four_elements(), EvalMode::Plain)
        .map_err(|x| x.to_string())?;
    let want = grid(&[&["0", "0", "1", "-1"], &["0", "0", "1", "1"], &["1", "1", "E1", "0"], &["-1", "1", "0", "E1"]]);
    ensure(show(&four.gram) == want, || format!("4x4: {:?}", show(&four.gram)))?;
    ensure(four.det() == g("4"), || format!("4x4 det {}", four.det()))
}

fn state_space_ranks() -> Check {
    let cases: Vec<(&str, Meom, Vec<Cobordism>, usize, &str)> = vec![
        ("S1", Meom::unmarked(1), standard_spanning(&Meom::unmarked(1)).unwrap(), 2, "q^-1 + q"),
        ("S1+-", Meom::from_words(&["+-"]), vec![builders::seamed_cup(0), builders::seamed_cup(1)], 2, "q^-1 + q"),
        ("S1++--", Meom::from_words(&["++--"]), builders::paired_two_elements(), 2, "q^-1 + q"),
        ("S1+-+-", Meom::from_words(&["+-+-"]), builders::alternating_four_elements(), 4, "2*q^-1 + 2*q"),
        ("S1+- S1+-", Meom::from_words(&["+-", "+-"]), builders::two_circle_six_elements(), 6, "q^-2 + 3 + 2*q^2"),
    ];
    for (name, m, spanning, rank, graded) in cases {
        let s = StateSpace::new(&m, spanning, EvalMode::Plain).map_err(|x| x.to_string())?;
        let got = s.graded_rank().to_string();
        ensure(s.rank() == rank && got == graded, || format!("{name}: rank {} graded {got}", s.rank()))?;
    }
    let six = StateSpace::new(&Meom::from_words(&["+-", "+-"]), builders::two_circle_six_elements(), EvalMode::Plain)
        .map_err(|x| x.to_string())?;
    let mut degrees = six.degrees();
    degrees.sort();
    ensure(degrees == [-2, 0, 0, 0, 2, 2], || format!("degrees {degrees:?}"))
}

fn omega_contrast() -> Check {
    let s4 = Meom::from_words(&["+-+-"]);
    let plain = StateSpace::new(&s4, builders::alternating_four_elements(), EvalMode::Plain).map_err(|x| x.to_string())?;
    let twisted = StateSpace::new(&s4, builders::alternating_four_elements(), EvalMode::Omega).map_err(|x| x.to_string())?;
    ensure(plain.rank() == 4 && twisted.rank() == 2, || format!("ranks {} and {}", plain.rank(), twisted.rank()))?;
    let small = vec![builders::seamed_cup(0), builders::seamed_cup(1)];
    let big: Vec<Cobordism> = twisted.independent_subset().into_iter().map(|i| twisted.spanning[i].clone()).collect();
    let (grow, shrink) = builders::marked_point_cancel_pieces();
    let up = induced_matrix(&grow, &small, &big, EvalMode::Omega).map_err(|x| x.to_string())?;
    let down = induced_matrix(&shrink, &big, &small, EvalMode::Omega)
        .map_err(|x| x.to_string())?
        .scale(&Gaussian::omega());
    ensure(down.mul(&up) == InducedMatrix::identity(2), || format!("down*up = {}", down.mul(&up)))?;
    ensure(up.mul(&down) == InducedMatrix::identity(2), || format!("up*down = {}", up.mul(&down)))
}

fn frobenius_suite() -> Check {
    let mut failed = vec![];
    let mut rings = 0;
    for omega in [false, true] {
        for tag in BaseRing::ALL {
            let ring = BaseRing::new(tag, omega);
            rings += 1;
            for (name, ok) in Frobenius::new(ring).identities() {
                if !ok {
                    failed.push(format!("{ring} {name}"));
                }
            }
        }
    }
    ensure(rings == 8 && failed.is_empty(), || format!("{failed:?}"))
}

const TRIALS: u64 = 128;

fn closed(seed: u64) -> ClosedSeamedSurface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_closing(&Meom::empty(), &mut rng).build().unwrap().close().unwrap()
}

fn seeded_properties() -> Check {
    for t in 0..TRIALS {
        let (f, h) = (closed(2 * t), closed(2 * t + 1));
        let (vf, vh) = (value(&f), value(&h));
        ensure(value(&f.disjoint_union(&h)) == &vf * &vh, || format!("multiplicativity, trial {t}"))?;
        let r = eval(&f).unwrap();
        let graded = r.value.is_zero() || r.value.homogeneous_degree().unwrap() == Some(f.degree());
        let symmetric = r.value.from_elementary().unwrap().is_symmetric();
        ensure(graded && symmetric, || format!("homogeneity or symmetry, trial {t}"))?;
        ensure(eval_all_colorings(&f).unwrap().value == vf, || format!("coloring sum, trial {t}"))?;
        let twist = Gaussian::omega_pow(-(f.theta() as i64));
        ensure(eval_omega(&f).unwrap().value == vf.to_gauss().scale(&twist), || format!("omega twist, trial {t}"))?;
    }
    let starts = [Meom::from_words(&[""]), Meom::from_words(&["+-"]), Meom::from_words(&["", "+-"]), Meom::empty()];
    let mut rng = ChaCha8Rng::seed_from_u64(20261014);
    for t in 0..TRIALS as usize {
        let w1 = random_word(&starts[t % 4], t % 5, &mut rng).build().unwrap();
        let w2 = random_word(&w1.top, (t / 5) % 5, &mut rng).build().unwrap();
        let c = w2.compose(&w1).unwrap();
        let chi = c.euler_characteristic() == w1.euler_characteristic() + w2.euler_characteristic();
        ensure(chi && c.degree() == w1.degree() + w2.degree(), || format!("additivity, trial {t}"))?;
    }
    let report = verify::suite(0, 100, BuildOptions::default()).map_err(|x| x.to_string())?;
    let failed: Vec<String> = report.failed().iter().map(|r| format!("{} {:?}", r.id, r.mode)).collect();
    ensure(failed.is_empty(), || format!("relation failures {failed:?}"))?;
    let separating = report.relations.iter().any(|r| r.id == "neck_cutting_two_points" && r.trials == 100);
    ensure(separating, || "separating relation not run".into())?;
    let mutant = verify::suite(0, 20, BuildOptions { mutate_sigma: true }).map_err(|x| x.to_string())?;
    ensure(!mutant.all_passed(), || "sign mutant went undetected".into())
}

fn tqft_dictionary() -> Check {
    let one = standard_spanning(&Meom::unmarked(1)).unwrap();
    let two = standard_spanning(&Meom::unmarked(2)).unwrap();
    let empty = standard_spanning(&Meom::empty()).unwrap();
    let frob = Frobenius::new(BaseRing::new(RingTag::R, false));
    let [o, x] = frob.basis();
    let scalar = |s: &seamtqft::frobenius::Scalar| s.as_poly().expect("R scalars are polynomials").clone();
    let column = |p: &seamtqft::frobenius::FrobElement| vec![scalar(&p.a), scalar(&p.b)];
    let transpose = |cols: Vec<Vec<GaussPoly>>| -> Vec<Vec<GaussPoly>> {
        (0..cols[0].len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    };
    let module = [
        ("unit", transpose(vec![column(&o)])),
        ("dotted unit", transpose(vec![column(&x)])),
        ("counit", vec![vec![scalar(&frob.eps(&o)), scalar(&frob.eps(&x))]]),
        ("multiplication", transpose(frob.tensor_basis().iter().map(|t| column(&frob.m(t))).collect())),
        (
            "comultiplication",
            transpose([&o, &x].iter().map(|p| frob.delta(p).0.iter().map(scalar).collect()).collect()),
        ),
        ("sigma+", transpose(vec![column(&frob.sigma_plus(&o)), column(&frob.sigma_plus(&x))])),
        ("sigma-", transpose(vec![column(&frob.sigma_minus(&o)), column(&frob.sigma_minus(&x))])),
    ];
    let pieces = [
        (builders::cup(), &empty, &one),
        (builders::dotted_cup(1), &empty, &one),
        (builders::cap(), &one, &empty),
        (builders::pants(), &two, &one),
        (builders::copants(), &one, &two),
        (builders::sigma_annulus(Direction::Up), &one, &one),
        (builders::sigma_annulus(Direction::Down), &one, &one),
    ];
    for ((name, want), (w, b0, b1)) in module.iter().zip(pieces.iter()) {
        let got = induced_matrix(w, b0, b1, EvalMode::Plain).map_err(|x| x.to_string())?;
        let got = got.as_polys().ok_or_else(|| format!("{name}: non-polynomial entries"))?;
        ensure(show(&got) == show(want), || format!("{name}: {:?} vs {:?}", show(&got), show(want)))?;
    }
    ensure(show(&tqft::sigma_plus()) == grid(&[&["1", "E1"], &["0", "-1"]]), || "sigma matrix".into())?;
    ensure(show(&tqft::multiplication()) == show(&module[3].1), || "tabulated multiplication".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sphere values", sphere_values),
        ("genus family", genus_family),
        ("seamed belt sphere", belt_sphere),
        ("products with a circle", circle_products),
        ("gram goldens", gram_goldens),
        ("state space ranks", state_space_ranks),
        ("omega contrast", omega_contrast),
        ("frobenius identities", frobenius_suite),
        ("seeded properties", seeded_properties),
        ("tqft dictionary", tqft_dictionary),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
