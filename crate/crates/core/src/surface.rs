//! Closed seamed surfaces as facets glued along co-oriented seams, and their
//! checkerboard colorings.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Connected component of the surface with all seams removed, recorded by
/// the genus of its closed-up model, its dots and its boundary circles.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Facet {
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub dots: u32,
    /// Number of boundary circles; slot ids are `0..slots`.
    #[serde(default)]
    pub slots: usize,
}

impl Facet {
    pub fn new(genus: u32, dots: u32, slots: usize) -> Self {
        Facet { genus, dots, slots }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.slots as i64
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A seam circle: a pairing of two facet slots, co-oriented into `prefer`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Seam {
    /// `(facet, slot)`
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub prefer: Side,
}

impl Seam {
    pub fn new(a: (usize, usize), b: (usize, usize), prefer: Side) -> Self {
        Seam { a, b, prefer }
    }

    pub fn preferred_facet(&self) -> usize {
        match self.prefer {
            Side::A => self.a.0,
            Side::B => self.b.0,
        }
    }

    pub fn other_facet(&self) -> usize {
        match self.prefer {
            Side::A => self.b.0,
            Side::B => self.a.0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct ClosedSeamedSurface {
    pub facets: Vec<Facet>,
    #[serde(default)]
    pub seams: Vec<Seam>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("slot {slot} of facet {facet} is not used by any seam")]
    DanglingSlot { facet: usize, slot: usize },
    #[error("slot {slot} of facet {facet} is used by more than one seam side")]
    DoubleUsedSlot { facet: usize, slot: usize },
    #[error("seam {seam} refers to missing facet {facet} or slot {slot}")]
    UnknownSlot { seam: usize, facet: usize, slot: usize },
    #[error("coloring does not give the two sides of seam {seam} different colors")]
    InadmissibleColoring { seam: usize },
    #[error("coloring has {got} entries for {expected} facets")]
    ColoringSize { got: usize, expected: usize },
    #[error("closed-up color-1 surface has odd Euler characteristic {0}")]
    ParityViolation(i64),
}

/// Facet colors, indexed by facet id; each entry is 1 or 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Coloring {
    pub color: Vec<u8>,
}

impl Coloring {
    pub fn swapped(&self) -> Coloring {
        Coloring {
            color: self.color.iter().map(|c| 3 - c).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColoringStats {
    pub theta1: usize,
    pub theta2: usize,
    pub d1: u64,
    pub d2: u64,
    pub chi_f1: i64,
    pub chi_f2: i64,
    /// χ of the color-1 part with all its boundary circles capped.
    pub chi_f1_bar: i64,
    pub chi_f2_bar: i64,
}

impl ClosedSeamedSurface {
    pub fn new(facets: Vec<Facet>, seams: Vec<Seam>) -> Self {
        ClosedSeamedSurface { facets, seams }
    }

    /// Seamless connected surface of genus `g` with `dots` dots.
    pub fn genus(g: u32, dots: u32) -> Self {
        Self::new(vec![Facet::new(g, dots, 0)], vec![])
    }

    pub fn sphere(dots: u32) -> Self {
        Self::genus(0, dots)
    }

    /// Sphere cut by one seam into two disks; seam prefers the first disk.
    pub fn seamed_sphere(dots_preferred: u32, dots_other: u32) -> Self {
        Self::new(
            vec![Facet::new(0, dots_preferred, 1), Facet::new(0, dots_other, 1)],
            vec![Seam::new((0, 0), (1, 0), Side::A)],
        )
    }

    /// Sphere as disk, annulus, disk; both seams prefer the annulus.
    pub fn belt_sphere(belt_dots: u32) -> Self {
        Self::new(
            vec![Facet::new(0, 0, 1), Facet::new(0, belt_dots, 2), Facet::new(0, 0, 1)],
            vec![Seam::new((0, 0), (1, 0), Side::B), Seam::new((1, 1), (2, 0), Side::A)],
        )
    }

    /// Torus cut by two parallel seams into two annuli. `same_side` selects
    /// whether both seams prefer the first annulus.
    pub fn two_seam_torus(same_side: bool) -> Self {
        let second = if same_side { Side::A } else { Side::B };
        Self::new(
            vec![Facet::new(0, 0, 2), Facet::new(0, 0, 2)],
            vec![
                Seam::new((0, 0), (1, 0), Side::A),
                Seam::new((0, 1), (1, 1), second),
            ],
        )
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.facets.len();
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().cloned());
        let mut seams = self.seams.clone();
        seams.extend(other.seams.iter().map(|s| Seam {
            a: (s.a.0 + off, s.a.1),
            b: (s.b.0 + off, s.b.1),
            prefer: s.prefer,
        }));
        Self::new(facets, seams)
    }

    pub fn validate(&self) -> Result<(), Vec<SurfaceError>> {
        let mut errs = Vec::new();
        let mut used: Vec<Vec<u32>> = self.facets.iter().map(|f| vec![0; f.slots]).collect();
        for (i, s) in self.seams.iter().enumerate() {
            for &(facet, slot) in [&s.a, &s.b] {
                match used.get_mut(facet).and_then(|v| v.get_mut(slot)) {
                    Some(u) => *u += 1,
                    None => errs.push(SurfaceError::UnknownSlot { seam: i, facet, slot }),
                }
            }
        }
        for (facet, v) in used.iter().enumerate() {
            for (slot, &u) in v.iter().enumerate() {
                if u == 0 {
                    errs.push(SurfaceError::DanglingSlot { facet, slot });
                } else if u > 1 {
                    errs.push(SurfaceError::DoubleUsedSlot { facet, slot });
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Seam circles contribute nothing; the sum runs over facets.
    pub fn euler_characteristic(&self) -> i64 {
        self.facets.iter().map(Facet::euler_characteristic).sum()
    }

    pub fn dots(&self) -> u64 {
        self.facets.iter().map(|f| f.dots as u64).sum()
    }

    pub fn theta(&self) -> usize {
        self.seams.len()
    }

    pub fn degree(&self) -> i64 {
        -self.euler_characteristic() + 2 * self.dots() as i64
    }

    /// Facet ids of each connected component, in order of first facet.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.facets.len()];
        let mut comps = Vec::new();
        for start in 0..self.facets.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for &g in &adj[f] {
                    if !seen[g] {
                        seen[g] = true;
                        comp.push(g);
                        queue.push_back(g);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.facets.len()];
        for s in &self.seams {
            adj[s.a.0].push(s.b.0);
            adj[s.b.0].push(s.a.0);
        }
        adj
    }

    /// Split into connected components, each relabelled from zero.
    pub fn split_components(&self) -> Vec<ClosedSeamedSurface> {
        let comps = self.components();
        let mut which = vec![(0, 0); self.facets.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for (k, &f) in comp.iter().enumerate() {
                which[f] = (ci, k);
            }
        }
        let mut out: Vec<ClosedSeamedSurface> = comps
            .iter()
            .map(|comp| Self::new(comp.iter().map(|&f| self.facets[f].clone()).collect(), vec![]))
            .collect();
        for s in &self.seams {
            let (ci, ka) = which[s.a.0];
            let (_, kb) = which[s.b.0];
            out[ci].seams.push(Seam::new((ka, s.a.1), (kb, s.b.1), s.prefer));
        }
        out
    }

    /// Coloring of one component by propagation from its first facet
    /// (colored 1); `None` when the component is odd. Entries outside the
    /// component are 0.
    pub fn propagate_coloring(&self, comp: &[usize]) -> Option<Vec<u8>> {
        let adj = self.adjacency();
        let mut color = vec![0u8; self.facets.len()];
        let &start = comp.first()?;
        color[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if color[g] == 0 {
                    color[g] = 3 - color[f];
                    queue.push_back(g);
                } else if color[g] == color[f] {
                    return None;
                }
            }
        }
        Some(color)
    }

    pub fn is_even(&self) -> bool {
        self.components()
            .iter()
            .all(|c| self.propagate_coloring(c).is_some())
    }

    /// All checkerboard colorings: two per component, combined as a product.
    pub fn admissible_colorings(&self) -> Vec<Coloring> {
        let mut per_comp = Vec::new();
        for comp in self.components() {
            match self.propagate_coloring(&comp) {
                Some(c) => per_comp.push((comp, c)),
                None => return vec![],
            }
        }
        let mut out = vec![vec![0u8; self.facets.len()]];
        for (comp, base) in &per_comp {
            let mut next = Vec::with_capacity(out.len() * 2);
            for partial in &out {
                for flip in [false, true] {
                    let mut c = partial.clone();
                    for &f in comp {
                        c[f] = if flip { 3 - base[f] } else { base[f] };
                    }
                    next.push(c);
                }
            }
            out = next;
        }
        out.into_iter().map(|color| Coloring { color }).collect()
    }

    pub fn check_coloring(&self, c: &Coloring) -> Result<(), SurfaceError> {
        if c.color.len() != self.facets.len() {
            return Err(SurfaceError::ColoringSize {
                got: c.color.len(),
                expected: self.facets.len(),
            });
        }
        for (i, s) in self.seams.iter().enumerate() {
            let (x, y) = (c.color[s.a.0], c.color[s.b.0]);
            if x == y || !(1..=2).contains(&x) || !(1..=2).contains(&y) {
                return Err(SurfaceError::InadmissibleColoring { seam: i });
            }
        }
        Ok(())
    }

    pub fn coloring_stats(&self, c: &Coloring) -> Result<ColoringStats, SurfaceError> {
        self.check_coloring(c)?;
        let mut st = ColoringStats {
            theta1: 0,
            theta2: 0,
            d1: 0,
            d2: 0,
            chi_f1: 0,
            chi_f2: 0,
            chi_f1_bar: 0,
            chi_f2_bar: 0,
        };
        for s in &self.seams {
            if c.color[s.preferred_facet()] == 1 {
                st.theta1 += 1;
            } else {
                st.theta2 += 1;
            }
        }
        for (f, facet) in self.facets.iter().enumerate() {
            if c.color[f] == 1 {
                st.d1 += facet.dots as u64;
                st.chi_f1 += facet.euler_characteristic();
            } else {
                st.d2 += facet.dots as u64;
                st.chi_f2 += facet.euler_characteristic();
            }
        }
        // each seam bounds exactly one facet of each color
        st.chi_f1_bar = st.chi_f1 + self.theta() as i64;
        st.chi_f2_bar = st.chi_f2 + self.theta() as i64;
        if st.chi_f1_bar % 2 != 0 {
            return Err(SurfaceError::ParityViolation(st.chi_f1_bar));
        }
        if st.chi_f2_bar % 2 != 0 {
            return Err(SurfaceError::ParityViolation(st.chi_f2_bar));
        }
        Ok(st)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn dotted_belt_sphere() -> ClosedSeamedSurface {
        ClosedSeamedSurface::belt_sphere(1)
    }

    #[test]
    fn validate_examples() {
        assert!(ClosedSeamedSurface::genus(1, 0).validate().is_ok());
        let dangling = ClosedSeamedSurface::new(vec![Facet::new(0, 0, 1)], vec![]);
        assert_eq!(
            dangling.validate(),
            Err(vec![SurfaceError::DanglingSlot { facet: 0, slot: 0 }])
        );
        assert!(ClosedSeamedSurface::seamed_sphere(0, 0).validate().is_ok());
        let double = ClosedSeamedSurface::new(
            vec![Facet::new(0, 0, 1), Facet::new(0, 0, 1)],
            vec![Seam::new((0, 0), (1, 0), Side::A), Seam::new((0, 0), (1, 0), Side::A)],
        );
        assert!(double
            .validate()
            .unwrap_err()
            .contains(&SurfaceError::DoubleUsedSlot { facet: 0, slot: 0 }));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(ClosedSeamedSurface::genus(3, 0).euler_characteristic(), -4);
        assert_eq!(ClosedSeamedSurface::seamed_sphere(0, 0).euler_characteristic(), 2);
        let two = ClosedSeamedSurface::sphere(0).disjoint_union(&ClosedSeamedSurface::sphere(0));
        assert_eq!(two.euler_characteristic(), 4);
    }

    #[test]
    fn coloring_counts() {
        assert_eq!(ClosedSeamedSurface::seamed_sphere(0, 0).admissible_colorings().len(), 2);
        // an annulus whose two boundary circles are sewn to each other
        let odd = ClosedSeamedSurface::new(
            vec![Facet::new(0, 0, 2)],
            vec![Seam::new((0, 0), (0, 1), Side::A)],
        );
        assert!(odd.validate().is_ok());
        assert!(odd.admissible_colorings().is_empty());
        assert_eq!(ClosedSeamedSurface::genus(2, 0).admissible_colorings().len(), 2);
        let three = ClosedSeamedSurface::sphere(0)
            .disjoint_union(&ClosedSeamedSurface::seamed_sphere(1, 0))
            .disjoint_union(&ClosedSeamedSurface::genus(1, 0));
        assert_eq!(three.admissible_colorings().len(), 8);
    }

    #[test]
    fn stats_of_the_belt_sphere() {
        let f = dotted_belt_sphere();
        let c1 = Coloring { color: vec![2, 1, 2] };
        let st = f.coloring_stats(&c1).unwrap();
        assert_eq!((st.theta1, st.chi_f1_bar, st.d1, st.d2), (2, 2, 1, 0));
        let st2 = f.coloring_stats(&c1.swapped()).unwrap();
        assert_eq!((st2.theta1, st2.chi_f1_bar, st2.d2), (0, 4, 1));
        let s = ClosedSeamedSurface::sphere(0);
        for c in s.admissible_colorings() {
            let st = s.coloring_stats(&c).unwrap();
            assert_eq!((st.theta1, st.d1, st.d2), (0, 0, 0));
        }
        assert!(f.coloring_stats(&Coloring { color: vec![1, 1, 2] }).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(ClosedSeamedSurface::sphere(1).degree(), 0);
        assert_eq!(ClosedSeamedSurface::genus(3, 0).degree(), 4);
        assert_eq!(ClosedSeamedSurface::genus(1, 0).degree(), 0);
    }

    #[test]
    fn split_preserves_data() {
        let f = ClosedSeamedSurface::seamed_sphere(1, 0).disjoint_union(&dotted_belt_sphere());
        let parts = f.split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1], dotted_belt_sphere());
    }

    #[test]
    fn json_shape() {
        let s = ClosedSeamedSurface::seamed_sphere(1, 0);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"facets":[{"genus":0,"dots":1,"slots":1},{"genus":0,"dots":0,"slots":1}],"seams":[{"a":[0,0],"b":[1,0],"prefer":"a"}]}"#
        );
        let back: ClosedSeamedSurface = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
