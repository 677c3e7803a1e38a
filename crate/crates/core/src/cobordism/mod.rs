//! Seamed cobordisms between meoms: facets with arc-subdivided boundary,
//! composition by gluing, disjoint union, mirror and closure.

mod gens;
mod meom;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{ClosedSeamedSurface, Facet, Seam, Side};

pub use gens::{builders, BuildOptions, Gen, SigmaSign, Word};
pub use meom::{Circle, Meom, Sign};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CobError {
    #[error("invalid meom: {0}")]
    Meom(String),
    #[error("malformed cobordism: {0}")]
    Malformed(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("co-orientation clash: {0}")]
    CoorientationClash(String),
    #[error("weights differ: bottom {bottom}, top {top}")]
    WeightMismatch { bottom: i64, top: i64 },
    #[error("placement conflict: {0}")]
    Placement(String),
    #[error("facet {facet} has negative genus")]
    NegativeGenus { facet: usize },
    #[error("facet {facet} has non-integer genus")]
    NonIntegerGenus { facet: usize },
    #[error("generator {index} ({gen}): {msg}")]
    Generator { index: usize, gen: String, msg: String },
    #[error("not closed: boundary {0}")]
    NotClosed(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Bottom,
    Top,
}

impl Level {
    pub fn flip(self) -> Level {
        match self {
            Level::Bottom => Level::Top,
            Level::Top => Level::Bottom,
        }
    }
}

/// Compact facet: Euler characteristic of the facet with boundary, and dots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CobFacet {
    pub chi: i64,
    pub dots: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Endpoint {
    pub level: Level,
    pub circle: usize,
    pub mark: usize,
}

impl Endpoint {
    pub fn new(level: Level, circle: usize, mark: usize) -> Self {
        Endpoint { level, circle, mark }
    }
}

/// Seam arc between two marked points; `preferred` is the facet its
/// co-orientation points into.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SeamArc {
    pub ends: [Endpoint; 2],
    pub preferred: usize,
    pub other: usize,
}

impl SeamArc {
    pub fn new(ends: [Endpoint; 2], preferred: usize, other: usize) -> Self {
        SeamArc { ends, preferred, other }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SeamCircle {
    pub preferred: usize,
    pub other: usize,
}

/// `bottom_arcs[c][i]` is the facet containing arc `i` of bottom circle `c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Cobordism {
    pub bottom: Meom,
    pub top: Meom,
    pub facets: Vec<CobFacet>,
    pub bottom_arcs: Vec<Vec<usize>>,
    pub top_arcs: Vec<Vec<usize>>,
    pub seam_arcs: Vec<SeamArc>,
    pub seam_circles: Vec<SeamCircle>,
}

/// Side-by-side or nested disjoint union.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Placement {
    SideBySide,
    /// Root circles of the second factor go inside the given circles of the
    /// first factor's bottom and top.
    Nested {
        bottom_parent: Option<usize>,
        top_parent: Option<usize>,
    },
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

impl Cobordism {
    /// Empty cobordism ∅ → ∅.
    pub fn empty() -> Self {
        Self::identity(&Meom::empty())
    }

    pub fn identity(m: &Meom) -> Self {
        gens::identity(m)
    }

    pub fn meom(&self, level: Level) -> &Meom {
        match level {
            Level::Bottom => &self.bottom,
            Level::Top => &self.top,
        }
    }

    pub fn arcs(&self, level: Level) -> &Vec<Vec<usize>> {
        match level {
            Level::Bottom => &self.bottom_arcs,
            Level::Top => &self.top_arcs,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.facets.iter().map(|f| f.chi).sum::<i64>() - self.seam_arcs.len() as i64
    }

    pub fn dots(&self) -> u64 {
        self.facets.iter().map(|f| f.dots as u64).sum()
    }

    pub fn degree(&self) -> i64 {
        -self.euler_characteristic() + 2 * self.dots() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    /// Structural checks: shapes, co-orientations at every seam end, the
    /// sign rule for seam arcs, weights, and integral facet genera.
    pub fn validate(&self) -> Result<(), CobError> {
        self.bottom.validate()?;
        self.top.validate()?;
        let nf = self.facets.len();
        for level in [Level::Bottom, Level::Top] {
            let m = self.meom(level);
            let arcs = self.arcs(level);
            if arcs.len() != m.len() {
                return Err(CobError::Malformed(format!("{level:?} arc table has {} circles, meom has {}", arcs.len(), m.len())));
            }
            for (c, (row, circle)) in arcs.iter().zip(&m.circles).enumerate() {
                if row.len() != circle.arc_count() {
                    return Err(CobError::Malformed(format!("{level:?} circle {c} has {} arcs listed, expected {}", row.len(), circle.arc_count())));
                }
                if let Some(&f) = row.iter().find(|&&f| f >= nf) {
                    return Err(CobError::Malformed(format!("unknown facet {f}")));
                }
            }
        }
        for s in &self.seam_circles {
            if s.preferred >= nf || s.other >= nf {
                return Err(CobError::Malformed("seam circle refers to an unknown facet".into()));
            }
        }
        let mut used: HashMap<Endpoint, usize> = HashMap::new();
        for (i, s) in self.seam_arcs.iter().enumerate() {
            for e in &s.ends {
                let m = self.meom(e.level);
                let Some(circle) = m.circles.get(e.circle) else {
                    return Err(CobError::Malformed(format!("seam arc {i} ends on a missing circle")));
                };
                if e.mark >= circle.marks.len() {
                    return Err(CobError::Malformed(format!("seam arc {i} ends on a missing mark")));
                }
                if used.insert(*e, i).is_some() {
                    return Err(CobError::Malformed(format!("mark {e:?} is used by two seam arcs")));
                }
                let (into, away) = circle.sides_at(e.mark);
                let row = &self.arcs(e.level)[e.circle];
                if (row[into], row[away]) != (s.preferred, s.other) {
                    return Err(CobError::CoorientationClash(format!(
                        "seam arc {i} at {e:?}: facets ({}, {}) do not match preferred/other ({}, {})",
                        row[into], row[away], s.preferred, s.other
                    )));
                }
            }
            let [a, b] = s.ends;
            let sa = self.meom(a.level).circles[a.circle].marks[a.mark];
            let sb = self.meom(b.level).circles[b.circle].marks[b.mark];
            let ok = if a.level == b.level { sa != sb } else { sa == sb };
            if !ok {
                return Err(CobError::CoorientationClash(format!("seam arc {i} joins {sa} and {sb} across {:?}/{:?}", a.level, b.level)));
            }
        }
        if used.len() != self.bottom.num_marks() + self.top.num_marks() {
            return Err(CobError::Malformed("some marked point is not the end of a seam arc".into()));
        }
        let (wb, wt) = (self.bottom.weight(), self.top.weight());
        if wb != wt {
            return Err(CobError::WeightMismatch { bottom: wb, top: wt });
        }
        self.facet_genera().map(|_| ())
    }

    /// Number of boundary circles of each facet: cycles of meom arcs and
    /// seam-arc sides, whole unmarked circles, and seam-circle sides.
    pub fn facet_boundary_counts(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.facets.len()];
        for s in &self.seam_circles {
            count[s.preferred] += 1;
            count[s.other] += 1;
        }
        let mut seam_at: HashMap<Endpoint, (usize, usize)> = HashMap::new();
        for (i, s) in self.seam_arcs.iter().enumerate() {
            for (k, e) in s.ends.iter().enumerate() {
                seam_at.insert(*e, (i, k));
            }
        }
        let mut seen: HashSet<(Level, usize, usize)> = HashSet::new();
        for level in [Level::Bottom, Level::Top] {
            for (c, circle) in self.meom(level).circles.iter().enumerate() {
                if !circle.is_marked() {
                    count[self.arcs(level)[c][0]] += 1;
                    continue;
                }
                for arc in 0..circle.arc_count() {
                    if seen.contains(&(level, c, arc)) {
                        continue;
                    }
                    count[self.arcs(level)[c][arc]] += 1;
                    // walk the boundary cycle; `forward` = travelling along the canonical orientation
                    let (mut lv, mut cc, mut a, mut forward) = (level, c, arc, true);
                    loop {
                        seen.insert((lv, cc, a));
                        let circ = &self.meom(lv).circles[cc];
                        let k = circ.marks.len();
                        let mark = if forward { (a + 1) % k } else { a };
                        // + prefers the arc starting at the mark, − the arc ending there
                        let preferred_side = forward == (circ.marks[mark] == Sign::Minus);
                        let (si, end) = seam_at[&Endpoint::new(lv, cc, mark)];
                        let far = self.seam_arcs[si].ends[1 - end];
                        let fc = &self.meom(far.level).circles[far.circle];
                        let fk = fc.marks.len();
                        let next_forward = (fc.marks[far.mark] == Sign::Plus) == preferred_side;
                        let next = if next_forward { far.mark } else { (far.mark + fk - 1) % fk };
                        lv = far.level;
                        cc = far.circle;
                        a = next;
                        forward = next_forward;
                        if seen.contains(&(lv, cc, a)) {
                            break;
                        }
                    }
                }
            }
        }
        count
    }

    /// Genus of each facet from χ = 2 − 2g − b.
    pub fn facet_genera(&self) -> Result<Vec<u32>, CobError> {
        let b = self.facet_boundary_counts();
        self.facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let twice = 2 - f.chi - b[i] as i64;
                if twice < 0 {
                    Err(CobError::NegativeGenus { facet: i })
                } else if twice % 2 != 0 {
                    Err(CobError::NonIntegerGenus { facet: i })
                } else {
                    Ok((twice / 2) as u32)
                }
            })
            .collect()
    }

    /// `self ∘ first`: first `first`, then `self`.
    pub fn compose(&self, first: &Cobordism) -> Result<Cobordism, CobError> {
        compose(self, first)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Cobordism) -> Result<Cobordism, CobError> {
        compose(then, self)
    }

    /// Seam arcs are unoriented and unordered; sort them so that equal
    /// cobordisms compare equal.
    pub(crate) fn normalized(mut self) -> Cobordism {
        for s in &mut self.seam_arcs {
            s.ends.sort();
        }
        self.seam_arcs.sort();
        self.seam_circles.sort();
        self
    }

    /// Reflection in the vertical direction.
    pub fn mirror(&self) -> Cobordism {
        let mut seam_arcs = self.seam_arcs.clone();
        for s in &mut seam_arcs {
            for e in &mut s.ends {
                e.level = e.level.flip();
            }
        }
        Cobordism {
            bottom: self.top.clone(),
            top: self.bottom.clone(),
            facets: self.facets.clone(),
            bottom_arcs: self.top_arcs.clone(),
            top_arcs: self.bottom_arcs.clone(),
            seam_arcs,
            seam_circles: self.seam_circles.clone(),
        }
        .normalized()
    }

    /// Renumber the top circles (`map[old] = new`) and rotate their marks
    /// (new mark `j` is old mark `(j + rot[old]) mod k`).
    pub fn relabel(&self, level: Level, map: &[usize], rot: &[usize]) -> Cobordism {
        let m = self.meom(level);
        let new_meom = m.relabeled(map, rot);
        let old_arcs = self.arcs(level);
        let mut new_arcs = vec![Vec::new(); m.len()];
        for (old, row) in old_arcs.iter().enumerate() {
            let k = row.len();
            new_arcs[map[old]] = (0..k).map(|j| row[(j + rot[old]) % k]).collect();
        }
        let mut out = self.clone();
        for s in &mut out.seam_arcs {
            for e in &mut s.ends {
                if e.level == level {
                    let k = m.circles[e.circle].marks.len();
                    e.mark = (e.mark + k - rot[e.circle] % k) % k;
                    e.circle = map[e.circle];
                }
            }
        }
        match level {
            Level::Bottom => {
                out.bottom = new_meom;
                out.bottom_arcs = new_arcs;
            }
            Level::Top => {
                out.top = new_meom;
                out.top_arcs = new_arcs;
            }
        }
        out.normalized()
    }

    /// Disjoint union; see [`Placement`].
    pub fn tensor(&self, other: &Cobordism, placement: Placement) -> Result<Cobordism, CobError> {
        let (bp, tp) = match placement {
            Placement::SideBySide => (None, None),
            Placement::Nested {
                bottom_parent,
                top_parent,
            } => (bottom_parent, top_parent),
        };
        let parity = |m: &Meom, p: Option<usize>| -> Result<bool, CobError> {
            match p {
                None => Ok(false),
                Some(c) if c < m.len() => Ok(m.depth(c).is_multiple_of(2)),
                Some(c) => Err(CobError::Placement(format!("no circle {c}"))),
            }
        };
        let flip_b = parity(&self.bottom, bp)?;
        let flip_t = parity(&self.top, tp)?;
        let needs_b = !other.bottom.is_empty();
        let needs_t = !other.top.is_empty();
        if needs_b && needs_t && flip_b != flip_t {
            return Err(CobError::Placement("bottom and top insertion depths differ in parity".into()));
        }
        let flip = if needs_b { flip_b } else { flip_t };
        let o = if flip { other.reoriented() } else { other.clone() };
        let nf = self.facets.len();
        let mut out = self.clone();
        out.facets.extend(o.facets.iter().cloned());
        for (level, parent) in [(Level::Bottom, bp), (Level::Top, tp)] {
            let base = self.meom(level).len();
            let (meom, arcs) = match level {
                Level::Bottom => (&mut out.bottom, &mut out.bottom_arcs),
                Level::Top => (&mut out.top, &mut out.top_arcs),
            };
            for c in &o.meom(level).circles {
                meom.circles.push(Circle::new(c.parent.map(|p| p + base).or(parent), c.marks.clone()));
            }
            for row in o.arcs(level) {
                arcs.push(row.iter().map(|f| f + nf).collect());
            }
        }
        let (bb, tb) = (self.bottom.len(), self.top.len());
        for s in &o.seam_arcs {
            let mut s = *s;
            s.preferred += nf;
            s.other += nf;
            for e in &mut s.ends {
                e.circle += match e.level {
                    Level::Bottom => bb,
                    Level::Top => tb,
                };
            }
            out.seam_arcs.push(s);
        }
        for s in &o.seam_circles {
            out.seam_circles.push(SeamCircle {
                preferred: s.preferred + nf,
                other: s.other + nf,
            });
        }
        Ok(out.normalized())
    }

    /// The same surface with every boundary circle's canonical orientation
    /// reversed, as happens when it moves across a nesting-depth parity.
    pub fn reoriented(&self) -> Cobordism {
        let mut out = self.clone();
        for level in [Level::Bottom, Level::Top] {
            let (meom, arcs) = match level {
                Level::Bottom => (&mut out.bottom, &mut out.bottom_arcs),
                Level::Top => (&mut out.top, &mut out.top_arcs),
            };
            for (c, circle) in meom.circles.iter_mut().enumerate() {
                let k = circle.marks.len();
                if k == 0 {
                    continue;
                }
                circle.marks = (0..k).map(|j| circle.marks[k - 1 - j].flip()).collect();
                let row = arcs[c].clone();
                // old arc i becomes new arc k−2−i
                for (i, &f) in row.iter().enumerate() {
                    arcs[c][(2 * k - 2 - i) % k] = f;
                }
            }
        }
        for s in &mut out.seam_arcs {
            for e in &mut s.ends {
                let k = self.meom(e.level).circles[e.circle].marks.len();
                e.mark = k - 1 - e.mark;
            }
        }
        out
    }

    /// The closed seamed surface of a cobordism ∅ → ∅.
    pub fn close(&self) -> Result<ClosedSeamedSurface, CobError> {
        if !self.is_closed() {
            return Err(CobError::NotClosed(format!("{} → {}", self.bottom, self.top)));
        }
        let genera = self.facet_genera()?;
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .zip(&genera)
            .map(|(f, &g)| Facet::new(g, f.dots, 0))
            .collect();
        let mut seams = Vec::with_capacity(self.seam_circles.len());
        for s in &self.seam_circles {
            let a = (s.preferred, facets[s.preferred].slots);
            facets[s.preferred].slots += 1;
            let b = (s.other, facets[s.other].slots);
            facets[s.other].slots += 1;
            seams.push(Seam::new(a, b, Side::A));
        }
        Ok(ClosedSeamedSurface::new(facets, seams))
    }
}

fn compose(second: &Cobordism, first: &Cobordism) -> Result<Cobordism, CobError> {
    if first.top != second.bottom {
        return Err(CobError::BoundaryMismatch(format!("{} vs {}", first.top, second.bottom)));
    }
    let n1 = first.facets.len();
    let nf = n1 + second.facets.len();
    let mut uf = UnionFind::new(nf);
    let mut glued_arcs = Vec::new();
    for (c, circle) in first.top.circles.iter().enumerate() {
        for i in 0..circle.arc_count() {
            let (a, b) = (first.top_arcs[c][i], n1 + second.bottom_arcs[c][i]);
            uf.union(a, b);
            if circle.is_marked() {
                glued_arcs.push(a);
            }
        }
    }
    // compact facet ids in order of first appearance
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    let mut facets: Vec<CobFacet> = Vec::new();
    for f in 0..nf {
        let r = uf.find(f);
        let id = *new_id.entry(r).or_insert_with(|| {
            facets.push(CobFacet { chi: 0, dots: 0 });
            facets.len() - 1
        });
        let src = if f < n1 { first.facets[f] } else { second.facets[f - n1] };
        facets[id].chi += src.chi;
        facets[id].dots += src.dots;
    }
    for a in glued_arcs {
        let id = new_id[&uf.find(a)];
        facets[id].chi -= 1;
    }
    let mut fid = |f: usize| new_id[&uf.find(f)];

    // seam arcs of both sides; ends on the shared meom are interface ends
    struct Piece {
        ends: [Endpoint; 2],
        preferred: usize,
        other: usize,
        from_first: bool,
    }
    let mut pieces = Vec::new();
    for s in &first.seam_arcs {
        pieces.push(Piece {
            ends: s.ends,
            preferred: fid(s.preferred),
            other: fid(s.other),
            from_first: true,
        });
    }
    for s in &second.seam_arcs {
        pieces.push(Piece {
            ends: s.ends,
            preferred: fid(s.preferred + n1),
            other: fid(s.other + n1),
            from_first: false,
        });
    }
    let is_interface = |p: &Piece, k: usize| (p.ends[k].level == Level::Top) == p.from_first;
    let mut at_mark: HashMap<(usize, usize, bool), (usize, usize)> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for k in 0..2 {
            if is_interface(p, k) {
                at_mark.insert((p.ends[k].circle, p.ends[k].mark, p.from_first), (i, k));
            }
        }
    }
    let mut used = vec![false; pieces.len()];
    let mut seam_arcs = Vec::new();
    let mut seam_circles: Vec<SeamCircle> = Vec::new();
    let partner = |p: &Piece, k: usize| {
        let e = p.ends[k];
        at_mark[&(e.circle, e.mark, !p.from_first)]
    };
    for start in 0..pieces.len() {
        for k0 in 0..2 {
            if used[start] || is_interface(&pieces[start], k0) {
                continue;
            }
            let (mut i, mut k) = (start, k0);
            let first_end = pieces[i].ends[k];
            let (pref, oth) = (pieces[i].preferred, pieces[i].other);
            loop {
                used[i] = true;
                let p = &pieces[i];
                if (p.preferred, p.other) != (pref, oth) {
                    return Err(CobError::CoorientationClash("seam arcs glue with mismatched sides".into()));
                }
                let far = 1 - k;
                if !is_interface(p, far) {
                    seam_arcs.push(SeamArc::new([first_end, p.ends[far]], pref, oth));
                    break;
                }
                let (j, kj) = partner(p, far);
                i = j;
                k = kj;
            }
        }
    }
    for start in 0..pieces.len() {
        if used[start] {
            continue;
        }
        let (pref, oth) = (pieces[start].preferred, pieces[start].other);
        let (mut i, mut k) = (start, 0);
        while !used[i] {
            used[i] = true;
            if (pieces[i].preferred, pieces[i].other) != (pref, oth) {
                return Err(CobError::CoorientationClash("closed seam glues with mismatched sides".into()));
            }
            let (j, kj) = partner(&pieces[i], 1 - k);
            i = j;
            k = kj;
        }
        seam_circles.push(SeamCircle { preferred: pref, other: oth });
    }
    for s in &first.seam_circles {
        seam_circles.push(SeamCircle {
            preferred: fid(s.preferred),
            other: fid(s.other),
        });
    }
    for s in &second.seam_circles {
        seam_circles.push(SeamCircle {
            preferred: fid(s.preferred + n1),
            other: fid(s.other + n1),
        });
    }
    let bottom_arcs = first.bottom_arcs.iter().map(|r| r.iter().map(|&f| fid(f)).collect()).collect();
    let top_arcs = second.top_arcs.iter().map(|r| r.iter().map(|&f| fid(f + n1)).collect()).collect();
    Ok(Cobordism {
        bottom: first.bottom.clone(),
        top: second.top.clone(),
        facets,
        bottom_arcs,
        top_arcs,
        seam_arcs,
        seam_circles,
    }
    .normalized())
}

/// `m × S¹`: each arc sweeps an annulus (or a torus for an unmarked
/// circle) and each marked point a seam circle.
pub fn product_with_circle(m: &Meom) -> ClosedSeamedSurface {
    let mut facets = vec![];
    let mut seams = vec![];
    for c in &m.circles {
        let base = facets.len();
        let k = c.marks.len();
        if k == 0 {
            facets.push(Facet::new(1, 0, 0));
            continue;
        }
        // arc i meets mark i at slot 0 and mark i+1 at slot 1
        facets.extend((0..k).map(|_| Facet::new(0, 0, 2)));
        for mk in 0..k {
            let (pref, _) = c.sides_at(mk);
            let ahead = (base + mk, 0);
            let behind = (base + (mk + k - 1) % k, 1);
            let side = if pref == mk { Side::A } else { Side::B };
            seams.push(Seam::new(ahead, behind, side));
        }
    }
    ClosedSeamedSurface::new(facets, seams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::eval;

    fn value(words: &[&str]) -> String {
        eval(&product_with_circle(&Meom::from_words(words))).unwrap().value.to_string()
    }

    #[test]
    fn circle_products() {
        assert_eq!(value(&["+-"]), "-2");
        assert_eq!(value(&["++"]), "2");
        assert_eq!(value(&[""]), "2");
        assert_eq!(value(&["+"]), "0");
    }
}
