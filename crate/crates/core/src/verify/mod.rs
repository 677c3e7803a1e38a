//! Randomized checking of local skein relations inside closed contexts.
//!
//! A relation is a linear combination of pieces `P_i: W → W'` over a window
//! `W`. A context is a pair of closing words `K_below: W → ∅` and
//! `K_above: W' → ∅`; the relation holds in the context when
//! `Σ cᵢ ⟨K_above ∘ Pᵢ ∘ mirror(K_below)⟩ = 0`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cobordism::{BuildOptions, CobError, Cobordism, Gen, Meom, Placement, SigmaSign, Sign, Word};
use crate::evaluation::{evaluate, EvalError, EvalMode};
use crate::poly::{parse_poly, GaussPoly, VarSet};
use crate::surface::{ClosedSeamedSurface, Facet, Seam, Side as SeamSide};

const RELATIONS: &str = include_str!("relations.json");

/// Longest context word produced by the generator.
pub const MAX_CONTEXT_LEN: usize = 12;
const MAX_PROBE: usize = 3;
const MAX_CIRCLES: usize = 4;
const MAX_MARKS: usize = 6;

#[derive(Error, Debug)]
pub enum VerifyError {
    #[error("relation data: {0}")]
    Data(String),
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error(transparent)]
    Cobordism(#[from] CobError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("relation {0} is not stated in {1:?} mode")]
    Mode(String, EvalMode),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideCondition {
    #[default]
    None,
    /// The window circle must separate the closed surface.
    SeparatingCurve,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum CoeffData {
    Same(String),
    PerMode { plain: Option<String>, omega: Option<String> },
}

#[derive(Clone, Debug, Deserialize)]
struct TermData {
    c: CoeffData,
    word: Vec<Gen>,
}

#[derive(Clone, Debug, Deserialize)]
struct RelationData {
    id: String,
    source: String,
    modes: Vec<EvalMode>,
    #[serde(default)]
    side: SideCondition,
    window: Vec<String>,
    terms: Vec<TermData>,
}

#[derive(Clone, Debug)]
pub struct Term {
    pub plain: Option<GaussPoly>,
    pub omega: Option<GaussPoly>,
    pub piece: Word,
}

impl Term {
    pub fn coeff(&self, mode: EvalMode) -> Option<&GaussPoly> {
        match mode {
            EvalMode::Plain => self.plain.as_ref(),
            EvalMode::Omega => self.omega.as_ref(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub source: String,
    pub modes: Vec<EvalMode>,
    pub side: SideCondition,
    pub bottom: Meom,
    pub top: Meom,
    pub terms: Vec<Term>,
}

fn coeff(s: &str) -> Result<GaussPoly, VerifyError> {
    parse_poly(s, Some(VarSet::Elementary)).map_err(|e| VerifyError::Data(format!("coefficient {s:?}: {e}")))
}

impl Relation {
    fn from_data(data: RelationData) -> Result<Relation, VerifyError> {
        let words: Vec<&str> = data.window.iter().map(String::as_str).collect();
        if words.iter().any(|w| w.chars().any(|c| Sign::parse(c).is_none())) {
            return Err(VerifyError::Data(format!("{}: bad window", data.id)));
        }
        let bottom = Meom::from_words(&words);
        let mut terms = vec![];
        let mut top = None;
        for t in data.terms {
            let piece = Word { start: bottom.clone(), word: t.word };
            let cob = piece.build()?;
            match &top {
                None => top = Some(cob.top.clone()),
                Some(m) if *m != cob.top => {
                    return Err(VerifyError::Data(format!("{}: pieces end on different meoms", data.id)));
                }
                _ => {}
            }
            let (plain, omega) = match &t.c {
                CoeffData::Same(s) => (Some(coeff(s)?), Some(coeff(s)?)),
                CoeffData::PerMode { plain, omega } => (
                    plain.as_deref().map(coeff).transpose()?,
                    omega.as_deref().map(coeff).transpose()?,
                ),
            };
            terms.push(Term { plain, omega, piece });
        }
        for &mode in &data.modes {
            if terms.iter().any(|t| t.coeff(mode).is_none()) {
                return Err(VerifyError::Data(format!("{}: missing {mode:?} coefficient", data.id)));
            }
        }
        let top = top.ok_or_else(|| VerifyError::Data(format!("{}: no terms", data.id)))?;
        if data.side == SideCondition::SeparatingCurve && (bottom.len() != 1 || bottom != top) {
            return Err(VerifyError::Data(format!("{}: separating window must be one circle", data.id)));
        }
        Ok(Relation {
            id: data.id,
            source: data.source,
            modes: data.modes,
            side: data.side,
            bottom,
            top,
            terms,
        })
    }

    pub fn holds_in(&self, mode: EvalMode) -> bool {
        self.modes.contains(&mode)
    }
}

/// Parses a relation list in the registry's JSON format.
pub fn parse_relations(json: &str) -> Result<Vec<Relation>, VerifyError> {
    let specs: Vec<RelationData> = serde_json::from_str(json).map_err(|e| VerifyError::Data(e.to_string()))?;
    specs.into_iter().map(Relation::from_data).collect()
}

/// The built-in relation registry.
pub fn registry() -> &'static [Relation] {
    static REG: OnceLock<Vec<Relation>> = OnceLock::new();
    REG.get_or_init(|| parse_relations(RELATIONS).expect("built-in relations are well formed"))
}

pub fn relation(id: &str) -> Result<&'static Relation, VerifyError> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| VerifyError::UnknownRelation(id.to_string()))
}

/// Two closing words around a window, plus extra circles that run
/// alongside the window as an identity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Context {
    pub spectator: Meom,
    pub below: Word,
    pub above: Word,
}

impl Context {
    /// Caps everything off with no extra topology.
    pub fn trivial(rel: &Relation) -> Context {
        Context {
            spectator: Meom::empty(),
            below: Word { start: rel.bottom.clone(), word: closing(&rel.bottom).expect("windows close") },
            above: Word { start: rel.top.clone(), word: closing(&rel.top).expect("windows close") },
        }
    }

    /// `spectator` must consist of root circles.
    pub fn random(rel: &Relation, spectator: &Meom, rng: &mut ChaCha8Rng) -> Context {
        let widen = |m: &Meom| {
            let mut m = m.clone();
            m.circles.extend(spectator.circles.iter().cloned());
            m
        };
        Context {
            spectator: spectator.clone(),
            below: random_closing(&widen(&rel.bottom), rng),
            above: random_closing(&widen(&rel.top), rng),
        }
    }

    /// The closed surface around one piece.
    pub fn close_piece(&self, piece: &Cobordism) -> Result<ClosedSeamedSurface, CobError> {
        let piece = if self.spectator.is_empty() {
            piece.clone()
        } else {
            piece.tensor(&Cobordism::identity(&self.spectator), Placement::SideBySide)?
        };
        let below = self.below.build()?.mirror();
        let above = self.above.build()?;
        above.compose(&piece.compose(&below)?)?.close()
    }
}

fn sibling_groups(m: &Meom) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<Option<usize>, Vec<usize>> = BTreeMap::new();
    for (i, c) in m.circles.iter().enumerate() {
        groups.entry(c.parent).or_default().push(i);
    }
    groups.into_values().collect()
}

fn circle_weight(m: &Meom, c: usize) -> i64 {
    m.circles[c].marks.iter().map(|s| s.value()).sum()
}

/// A word taking `m` to the empty meom. Needs every sibling group to carry
/// total weight zero, which every generator used by the probes preserves.
pub fn closing(m: &Meom) -> Option<Vec<Gen>> {
    let mut m = m.clone();
    let mut out = vec![];
    while !m.is_empty() {
        let g = next_closing_step(&m)?;
        m = g.apply(&m, BuildOptions::default()).ok()?.top;
        out.push(g);
    }
    Some(out)
}

fn next_closing_step(m: &Meom) -> Option<Gen> {
    for (c, circ) in m.circles.iter().enumerate() {
        let k = circ.marks.len();
        if let Some(at) = (0..k).find(|&t| k >= 2 && circ.marks[t] != circ.marks[(t + 1) % k]) {
            return Some(Gen::ChordCap { circle: c, at });
        }
    }
    if let Some(c) = (0..m.len()).find(|&c| !m.circles[c].is_marked() && m.children(c).is_empty()) {
        return Some(Gen::Cap { circle: c });
    }
    for group in sibling_groups(m) {
        let pos = group.iter().find(|&&c| circle_weight(m, c) > 0);
        let neg = group.iter().find(|&&c| circle_weight(m, c) < 0);
        if let (Some(&a), Some(&b)) = (pos, neg) {
            return Some(Gen::Pants { a, b, i: 0, j: 0 });
        }
    }
    None
}

/// A random generator applicable to `m` that keeps it closable.
fn probe_step(m: &Meom, rng: &mut ChaCha8Rng) -> Gen {
    let n = m.len();
    let marks = m.num_marks();
    let mut kinds: Vec<u8> = vec![0];
    if n > 0 {
        kinds.extend([1, 2]);
    }
    if n < MAX_CIRCLES {
        kinds.push(3);
        if n > 0 {
            kinds.push(4);
        }
    }
    if sibling_groups(m).iter().any(|g| g.len() >= 2) {
        kinds.push(5);
    }
    if n > 0 && marks + 2 <= MAX_MARKS {
        kinds.push(6);
    }
    if (0..n).any(|c| !m.circles[c].is_marked()) {
        kinds.push(7);
    }
    if n + 2 <= MAX_CIRCLES && marks + 4 <= MAX_MARKS {
        kinds.push(8);
    }
    let parent = |rng: &mut ChaCha8Rng| {
        if n == 0 || rng.gen_bool(0.5) {
            None
        } else {
            Some(rng.gen_range(0..n))
        }
    };
    match kinds[rng.gen_range(0..kinds.len())] {
        0 => Gen::Cup { parent: parent(rng) },
        1 => {
            let circle = rng.gen_range(0..n);
            Gen::Dot { circle, arc: rng.gen_range(0..m.circles[circle].arc_count()) }
        }
        2 => {
            let circle = rng.gen_range(0..n);
            let arc = rng.gen_range(0..m.circles[circle].arc_count());
            if rng.gen_bool(0.15) {
                Gen::Handle { circle, arc }
            } else if m.circles[circle].is_marked() {
                Gen::Rotate { circle, by: rng.gen_range(0..m.circles[circle].marks.len()) }
            } else {
                Gen::Dot { circle, arc }
            }
        }
        3 => Gen::Cup { parent: parent(rng) },
        4 => {
            let circle = rng.gen_range(0..n);
            let k = m.circles[circle].arc_count();
            let to_second = m
                .children(circle)
                .into_iter()
                .filter(|&ch| circle_weight(m, ch) == 0 && rng.gen_bool(0.5))
                .collect();
            Gen::Copants { circle, i: rng.gen_range(0..k), j: rng.gen_range(0..k), to_second }
        }
        5 => {
            let groups: Vec<Vec<usize>> = sibling_groups(m).into_iter().filter(|g| g.len() >= 2).collect();
            let g = &groups[rng.gen_range(0..groups.len())];
            let a = g[rng.gen_range(0..g.len())];
            let b = loop {
                let b = g[rng.gen_range(0..g.len())];
                if b != a {
                    break b;
                }
            };
            Gen::Pants {
                a,
                b,
                i: rng.gen_range(0..m.circles[a].arc_count()),
                j: rng.gen_range(0..m.circles[b].arc_count()),
            }
        }
        6 => {
            let circle = rng.gen_range(0..n);
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            Gen::ChordCup { circle, arc: rng.gen_range(0..m.circles[circle].arc_count()), sign }
        }
        7 => {
            let free: Vec<usize> = (0..n).filter(|&c| !m.circles[c].is_marked()).collect();
            let sign = if rng.gen_bool(0.5) { SigmaSign::Plus } else { SigmaSign::Minus };
            Gen::Sigma { circle: free[rng.gen_range(0..free.len())], sign }
        }
        _ => Gen::TwistedTube { parent: parent(rng) },
    }
}

/// A random word of `steps` generators out of `start` that leaves the
/// meom closable.
pub fn random_word(start: &Meom, steps: usize, rng: &mut ChaCha8Rng) -> Word {
    let mut m = start.clone();
    let mut word = vec![];
    for _ in 0..steps {
        let g = probe_step(&m, rng);
        m = g.apply(&m, BuildOptions::default()).expect("probe steps apply").top;
        word.push(g);
    }
    Word { start: start.clone(), word }
}

/// A random probe followed by the deterministic closing loop.
pub fn random_closing(start: &Meom, rng: &mut ChaCha8Rng) -> Word {
    loop {
        let steps = rng.gen_range(0..=MAX_PROBE);
        let Word { mut word, .. } = random_word(start, steps, rng);
        let mut m = Word { start: start.clone(), word: word.clone() }.build().expect("probe words build").top;
        for g in closing(&m).expect("probes keep the meom closable") {
            let (circle, arcs) = match g {
                Gen::Cap { circle } => (circle, 1),
                Gen::ChordCap { circle, .. } => (circle, m.circles[circle].arc_count()),
                _ => (usize::MAX, 0),
            };
            if arcs > 0 && rng.gen_bool(0.7) {
                let n_dots = if rng.gen_bool(0.25) { 2 } else { 1 };
                word.extend((0..n_dots).map(|_| Gen::Dot { circle, arc: rng.gen_range(0..arcs) }));
            }
            m = g.apply(&m, BuildOptions::default()).expect("closing steps apply").top;
            word.push(g);
        }
        if word.len() <= MAX_CONTEXT_LEN {
            return Word { start: start.clone(), word };
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Outcome {
    pub holds: bool,
    /// Some term evaluated to a nonzero value.
    pub nondegenerate: bool,
    /// `cᵢ ⟨closed surface i⟩` for each term.
    pub values: Vec<String>,
    pub total: String,
}

/// Evaluates the relation in one context; `opts` applies to piece
/// construction so mutated generators can be tested.
pub fn check_relation(
    rel: &Relation,
    ctx: &Context,
    mode: EvalMode,
    opts: BuildOptions,
) -> Result<Outcome, VerifyError> {
    let mut total = GaussPoly::zero(VarSet::Elementary);
    let mut values = vec![];
    let mut nondegenerate = false;
    for t in &rel.terms {
        let c = t.coeff(mode).ok_or_else(|| VerifyError::Mode(rel.id.clone(), mode))?;
        let piece = t.piece.build_with(opts)?;
        let v = evaluate(&ctx.close_piece(&piece)?, mode)?;
        let cv = c.try_mul(&v).map_err(|e| VerifyError::Data(e.to_string()))?;
        nondegenerate |= !cv.is_zero();
        values.push(cv.to_string());
        total = total.try_add(&cv).map_err(|e| VerifyError::Data(e.to_string()))?;
    }
    Ok(Outcome {
        holds: total.is_zero(),
        nondegenerate,
        values,
        total: total.to_string(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub context: Context,
    pub outcome: Outcome,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub id: String,
    pub source: String,
    pub mode: EvalMode,
    pub side: SideCondition,
    pub trials: usize,
    pub passed: usize,
    pub nondegenerate: usize,
    pub failures: Vec<Witness>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub relations: Vec<RelationReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed == r.trials)
    }

    pub fn failed(&self) -> Vec<&RelationReport> {
        self.relations.iter().filter(|r| r.passed < r.trials).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

const MAX_WITNESSES: usize = 3;

/// Runs `trials` random contexts for one relation in one mode. Trial 0 is
/// the trivial context; relations without a side condition cycle through
/// no spectator, an unmarked one and a marked one.
pub fn run_relation(
    rel: &Relation,
    mode: EvalMode,
    seed: u64,
    trials: usize,
    opts: BuildOptions,
) -> Result<RelationReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RelationReport {
        id: rel.id.clone(),
        source: rel.source.clone(),
        mode,
        side: rel.side,
        trials,
        passed: 0,
        nondegenerate: 0,
        failures: vec![],
    };
    for trial in 0..trials {
        let spectator = match (rel.side, trial % 3) {
            (SideCondition::None, 1) => Meom::from_words(&[""]),
            (SideCondition::None, 2) => Meom::from_words(&["+-"]),
            _ => Meom::empty(),
        };
        let context = if trial == 0 { Context::trivial(rel) } else { Context::random(rel, &spectator, &mut rng) };
        let outcome = check_relation(rel, &context, mode, opts)?;
        report.nondegenerate += usize::from(outcome.nondegenerate);
        if outcome.holds {
            report.passed += 1;
        } else if report.failures.len() < MAX_WITNESSES {
            report.failures.push(Witness { trial, context, outcome });
        }
    }
    Ok(report)
}

fn relation_seed(seed: u64, index: usize, mode: EvalMode) -> u64 {
    let m = match mode {
        EvalMode::Plain => 0,
        EvalMode::Omega => 1,
    };
    seed ^ ((index as u64) << 1 | m).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Every registered relation in every mode where it is stated.
pub fn suite(seed: u64, trials: usize, opts: BuildOptions) -> Result<SuiteReport, VerifyError> {
    suite_of(registry(), seed, trials, opts)
}

pub fn suite_of(rels: &[Relation], seed: u64, trials: usize, opts: BuildOptions) -> Result<SuiteReport, VerifyError> {
    let mut relations = vec![];
    if trials > 0 {
        for (i, rel) in rels.iter().enumerate() {
            for &mode in &rel.modes {
                relations.push(run_relation(rel, mode, relation_seed(seed, i, mode), trials, opts)?);
            }
        }
    }
    Ok(SuiteReport { seed, trials, relations })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PuncturedSphereCase {
    pub prefers_sphere: Vec<bool>,
    pub neighbor_dots: Vec<u32>,
    pub sign: i64,
    pub holds: bool,
}

/// A dotless `n`-punctured sphere glued along seam circles to `n` disks,
/// compared against the seamless sphere carrying all the disks' dots. The
/// expected sign is `(−1)^{p+1}` with `p` the number of circles whose
/// preferred side is the punctured sphere.
pub fn punctured_sphere_cases(max_n: usize) -> Result<Vec<PuncturedSphereCase>, VerifyError> {
    let mut out = vec![];
    for n in 1..=max_n {
        let dot_patterns: Vec<Vec<u32>> = vec![
            (0..n).map(|i| u32::from(i == 0)).collect(),
            (0..n).map(|i| if i == n - 1 { 2 } else { 0 }).collect(),
            (0..n).map(|i| u32::from(i < 2)).collect(),
        ];
        for mask in 0..(1u32 << n) {
            let prefers: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let p = prefers.iter().filter(|&&b| b).count() as i64;
            let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
            for dots in &dot_patterns {
                let mut facets = vec![Facet::new(0, 0, n)];
                let mut seams = vec![];
                for (i, &d) in dots.iter().enumerate() {
                    facets.push(Facet::new(0, d, 1));
                    let side = if prefers[i] { SeamSide::A } else { SeamSide::B };
                    seams.push(Seam::new((0, i), (i + 1, 0), side));
                }
                let seamed = evaluate(&ClosedSeamedSurface::new(facets, seams), EvalMode::Plain)?;
                let plain = ClosedSeamedSurface::new(vec![Facet::new(0, dots.iter().sum(), 0)], vec![]);
                let expected = evaluate(&plain, EvalMode::Plain)?.scale(&crate::poly::Gaussian::new(sign, 0));
                out.push(PuncturedSphereCase {
                    prefers_sphere: prefers.clone(),
                    neighbor_dots: dots.clone(),
                    sign,
                    holds: seamed == expected,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISPLAYED: &[&str] = &[
        "neck_cutting",
        "neck_cutting_sigma",
        "dot_migration_sum",
        "dot_migration_product",
        "dot_reduction",
        "circle_removal_in",
        "circle_removal_out",
        "sphere_zero",
        "dotted_sphere_one",
        "seam_saddle",
        "sigma_reversal",
        "remove_two_circles_opposite",
        "remove_two_circles_opposite_reversed",
        "remove_two_circles_parallel",
        "sigma_unit_plus",
        "sigma_unit_minus",
        "sigma_counit_plus",
        "sigma_counit_minus",
        "remove_three_circles_merge_plus",
        "remove_three_circles_merge_minus",
        "remove_three_circles_split_plus",
        "remove_three_circles_split_minus",
        "dot_slide_sigma",
        "star_dot_flip",
        "star_dot_sigma_swap",
        "handle_with_seam_plus_first",
        "handle_with_seam_minus_first",
        "handle_with_seam_plus_second",
        "handle_with_seam_minus_second",
        "move_sigma_across_split_plus",
        "move_sigma_across_split_minus",
        "sigma_cut_hollow",
        "neck_cutting_two_points",
    ];

    #[test]
    fn registry_covers_checklist() {
        let ids: Vec<&str> = registry().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, DISPLAYED);
    }

    #[test]
    fn every_relation_holds_in_trivial_context() {
        for rel in registry() {
            for &mode in &rel.modes {
                let out = check_relation(rel, &Context::trivial(rel), mode, BuildOptions::default()).unwrap();
                assert!(out.holds, "{} {mode:?}: {:?}", rel.id, out);
            }
        }
    }

    #[test]
    fn suite_passes() {
        let report = suite(7, 24, BuildOptions::default()).unwrap();
        if let Some(r) = report.failed().first() {
            panic!("{} {:?}: {}/{} first {:?}", r.id, r.mode, r.passed, r.trials, r.failures.first());
        }
        for r in &report.relations {
            eprintln!("{} {:?} nondegenerate {}/{}", r.id, r.mode, r.nondegenerate, r.trials);
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        let report = suite(1, 0, BuildOptions::default()).unwrap();
        assert!(report.relations.is_empty());
        assert!(report.all_passed());
    }

    #[test]
    fn suite_is_reproducible() {
        let a = suite(99, 4, BuildOptions::default()).unwrap();
        let b = suite(99, 4, BuildOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mutated_sigma_is_caught() {
        let report = suite(3, 6, BuildOptions { mutate_sigma: true }).unwrap();
        assert!(!report.failed().is_empty());
    }

    #[test]
    fn seam_saddle_needs_twist() {
        let rel = relation("seam_saddle").unwrap();
        let mut plain = rel.clone();
        for t in &mut plain.terms {
            t.plain = t.omega.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let caught = (0..60).any(|_| {
            let ctx = Context::random(rel, &Meom::empty(), &mut rng);
            !check_relation(&plain, &ctx, EvalMode::Plain, BuildOptions::default()).unwrap().holds
        });
        assert!(caught);
    }

    /// Contexts joining the window to a marked spectator by pants, so the
    /// window circle no longer separates.
    fn joined_contexts(start: &Meom) -> Vec<Word> {
        let mut out = vec![];
        for (i, j, dots) in (0..2).flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |d| (i, j, d)))) {
            let pants = Gen::Pants { a: 0, b: 1, i, j };
            let merged = pants.apply(start, BuildOptions::default()).unwrap().top;
            for at in 0..4 {
                let first = Gen::ChordCap { circle: 0, at };
                let Ok(c) = first.apply(&merged, BuildOptions::default()) else { continue };
                let mut word = vec![pants.clone()];
                word.extend((0..dots).map(|_| Gen::Dot { circle: 0, arc: 0 }));
                word.push(first);
                word.extend(closing(&c.top).unwrap());
                out.push(Word { start: start.clone(), word });
            }
        }
        out
    }

    #[test]
    fn two_point_neck_cut_needs_separation() {
        let rel = relation("neck_cutting_two_points").unwrap();
        let spectator = Meom::from_words(&["+-"]);
        let sides = joined_contexts(&Meom::from_words(&["+-", "+-"]));
        let broken = sides.iter().flat_map(|b| sides.iter().map(move |a| (b, a))).any(|(below, above)| {
            let ctx = Context { spectator: spectator.clone(), below: below.clone(), above: above.clone() };
            !check_relation(rel, &ctx, EvalMode::Plain, BuildOptions::default()).unwrap().holds
        });
        assert!(broken);
    }

    #[test]
    fn closing_handles_nested_marks() {
        let m = Meom::from_words(&["+-", "+", "-"]);
        let w = closing(&m).unwrap();
        assert!(Word { start: m, word: w }.build().unwrap().top.is_empty());
    }

    #[test]
    fn contexts_are_short() {
        let rel = relation("neck_cutting").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let c = Context::random(rel, &Meom::from_words(&["+-"]), &mut rng);
            assert!(c.below.word.len() <= MAX_CONTEXT_LEN && c.above.word.len() <= MAX_CONTEXT_LEN);
        }
    }

    #[test]
    fn punctured_sphere_signs() {
        let cases = punctured_sphere_cases(4).unwrap();
        assert_eq!(cases.len(), 3 * (2 + 4 + 8 + 16));
        for c in &cases {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn rejects_bad_data() {
        assert!(parse_relations("[{\"id\":\"x\"}]").is_err());
        let ragged = r#"[{"id":"x","source":"","modes":["plain"],"window":[""],
            "terms":[{"c":"1","word":[]},{"c":"1","word":[["copants",0]]}]}]"#;
        assert!(parse_relations(ragged).is_err());
    }
}
