//! Elementary cobordisms and generator words.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{CobError, CobFacet, Cobordism, Endpoint, Level, SeamArc, SeamCircle};
use super::meom::{Circle, Meom, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SigmaSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct BuildOptions {
    /// Flip the preferred side of every σ seam circle (a deliberately wrong
    /// convention, used as a mutant by the relation checker).
    pub mutate_sigma: bool,
}

/// One elementary step, applied to the current top meom.
///
/// Circle and mark indices refer to the meom the step is applied to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Gen {
    /// New unmarked circle bounding a disk, inside `parent` if given.
    Cup { parent: Option<usize> },
    /// Caps off an unmarked circle with no children.
    Cap { circle: usize },
    Dot { circle: usize, arc: usize },
    /// Adds a handle to the facet at the given arc.
    Handle { circle: usize, arc: usize },
    /// Annulus on an unmarked circle with one seam circle.
    Sigma { circle: usize, sign: SigmaSign },
    /// Splits a circle by a saddle cutting arcs `i` and `j`. The first piece
    /// keeps the index and marks `i+1..=j`; the second is appended and gets
    /// marks `j+1..=i` plus the listed children.
    Copants { circle: usize, i: usize, j: usize, to_second: Vec<usize> },
    /// Merges sibling circles `a` (index kept) and `b` by a saddle at arcs
    /// `i` of `a` and `j` of `b`; the merged marks are `a` from `i+1`, then
    /// `b` from `j+1`.
    Pants { a: usize, b: usize, i: usize, j: usize },
    /// Seam arc bitten into arc `arc`: inserts marks `(sign, −sign)` after mark `arc`.
    ChordCup { circle: usize, arc: usize, sign: Sign },
    /// Removes adjacent opposite marks `at`, `at+1` with a half-disk.
    ChordCap { circle: usize, at: usize },
    /// Cup followed by a chord cup: a disk split by one seam arc, bounding `+-`.
    SeamedCup { parent: Option<usize> },
    /// Two new `+-` circles joined by a tube cut into two strips by two seam arcs.
    TwistedTube { parent: Option<usize> },
    /// New mark `j` is old mark `j + by`.
    Rotate { circle: usize, by: usize },
}

impl Gen {
    pub fn name(&self) -> &'static str {
        match self {
            Gen::Cup { .. } => "cup",
            Gen::Cap { .. } => "cap",
            Gen::Dot { .. } => "dot",
            Gen::Handle { .. } => "handle",
            Gen::Sigma { sign: SigmaSign::Plus, .. } => "sigma+",
            Gen::Sigma { sign: SigmaSign::Minus, .. } => "sigma-",
            Gen::Copants { .. } => "copants",
            Gen::Pants { .. } => "pants",
            Gen::ChordCup { .. } => "chord_cup",
            Gen::ChordCap { .. } => "chord_cap",
            Gen::SeamedCup { .. } => "seamed_cup",
            Gen::TwistedTube { .. } => "twisted_tube",
            Gen::Rotate { .. } => "rotate",
        }
    }

    pub fn to_json(&self) -> Value {
        let opt = |p: &Option<usize>| match p {
            Some(p) => vec![json!(p)],
            None => vec![],
        };
        let mut v = vec![json!(self.name())];
        match self {
            Gen::Cup { parent } | Gen::SeamedCup { parent } | Gen::TwistedTube { parent } => v.extend(opt(parent)),
            Gen::Cap { circle } | Gen::Sigma { circle, .. } => v.push(json!(circle)),
            Gen::Dot { circle, arc } | Gen::Handle { circle, arc } => v.extend([json!(circle), json!(arc)]),
            Gen::Copants { circle, i, j, to_second } => {
                v.extend([json!(circle), json!(i), json!(j)]);
                if !to_second.is_empty() {
                    v.push(json!(to_second));
                }
            }
            Gen::Pants { a, b, i, j } => v.extend([json!(a), json!(b), json!(i), json!(j)]),
            Gen::ChordCup { circle, arc, sign } => v.extend([json!(circle), json!(arc), json!(sign.to_string())]),
            Gen::ChordCap { circle, at } => v.extend([json!(circle), json!(at)]),
            Gen::Rotate { circle, by } => v.extend([json!(circle), json!(by)]),
        }
        Value::Array(v)
    }

    /// Parses `["name", args...]`; trailing index arguments default to 0.
    pub fn from_json(v: &Value) -> Result<Gen, String> {
        let arr = v.as_array().ok_or("generator must be an array [name, args...]")?;
        let name = arr
            .first()
            .and_then(|n| n.as_str())
            .ok_or("generator must start with its name")?;
        let args = &arr[1..];
        let idx = |k: usize| -> Result<usize, String> {
            match args.get(k) {
                None => Ok(0),
                Some(a) => a
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| format!("argument {} of {name} must be a nonnegative integer", k + 1)),
            }
        };
        let need = |k: usize| -> Result<usize, String> {
            if args.len() <= k {
                return Err(format!("{name} needs at least {} arguments", k + 1));
            }
            idx(k)
        };
        let parent = || -> Result<Option<usize>, String> {
            match args.first() {
                None | Some(Value::Null) => Ok(None),
                Some(_) => idx(0).map(Some),
            }
        };
        let max_args = match name {
            "cup" | "seamed_cup" | "twisted_tube" => 1,
            "cap" | "sigma+" | "sigma-" => 1,
            "dot" | "handle" | "chord_cap" | "rotate" => 2,
            "chord_cup" => 3,
            "copants" | "pants" => 4,
            _ => return Err(format!("unknown generator {name:?}")),
        };
        if args.len() > max_args {
            return Err(format!("{name} takes at most {max_args} arguments"));
        }
        Ok(match name {
            "cup" => Gen::Cup { parent: parent()? },
            "seamed_cup" => Gen::SeamedCup { parent: parent()? },
            "twisted_tube" => Gen::TwistedTube { parent: parent()? },
            "cap" => Gen::Cap { circle: need(0)? },
            "sigma+" => Gen::Sigma { circle: need(0)?, sign: SigmaSign::Plus },
            "sigma-" => Gen::Sigma { circle: need(0)?, sign: SigmaSign::Minus },
            "dot" => Gen::Dot { circle: need(0)?, arc: idx(1)? },
            "handle" => Gen::Handle { circle: need(0)?, arc: idx(1)? },
            "chord_cap" => Gen::ChordCap { circle: need(0)?, at: idx(1)? },
            "rotate" => Gen::Rotate { circle: need(0)?, by: idx(1)? },
            "chord_cup" => {
                let sign = match args.get(2) {
                    None => Sign::Plus,
                    Some(s) => s
                        .as_str()
                        .and_then(|s| {
                            let mut cs = s.chars();
                            match (cs.next(), cs.next()) {
                                (Some(c), None) => Sign::parse(c),
                                _ => None,
                            }
                        })
                        .ok_or("chord_cup sign must be \"+\" or \"-\"")?,
                };
                Gen::ChordCup { circle: need(0)?, arc: idx(1)?, sign }
            }
            "copants" => {
                let to_second = match args.get(3) {
                    None => vec![],
                    Some(list) => list
                        .as_array()
                        .ok_or("copants children must be a list")?
                        .iter()
                        .map(|x| x.as_u64().map(|x| x as usize).ok_or("copants children must be indices"))
                        .collect::<Result<_, _>>()?,
                };
                Gen::Copants { circle: need(0)?, i: idx(1)?, j: idx(2)?, to_second }
            }
            "pants" => Gen::Pants { a: need(0)?, b: need(1)?, i: idx(2)?, j: idx(3)? },
            _ => unreachable!(),
        })
    }

    /// The elementary cobordism out of `m`.
    pub fn apply(&self, m: &Meom, opts: BuildOptions) -> Result<Cobordism, String> {
        let check = |c: usize| {
            if c < m.len() {
                Ok(&m.circles[c])
            } else {
                Err(format!("no circle {c} in {m}"))
            }
        };
        match *self {
            Gen::Cup { parent } => {
                if let Some(p) = parent {
                    check(p)?;
                }
                let mut top = m.clone();
                top.circles.push(Circle::new(parent, vec![]));
                let mut d = Draft::new(m, top);
                d.identity_all(m.len());
                let disk = d.facet(1);
                d.top_arcs[m.len()][0] = disk;
                d.finish()
            }
            Gen::Cap { circle } => {
                if check(circle)?.is_marked() {
                    return Err(format!("circle {circle} is marked"));
                }
                if !m.children(circle).is_empty() {
                    return Err(format!("circle {circle} has children"));
                }
                let (top, map) = remove_circle(m, circle);
                let mut d = Draft::new(m, top);
                for (b, t) in map.iter().enumerate() {
                    if let Some(t) = *t {
                        d.identity_circle(b, t);
                    }
                }
                let disk = d.facet(1);
                d.bottom_arcs[circle][0] = disk;
                d.finish()
            }
            Gen::Dot { circle, arc } | Gen::Handle { circle, arc } => {
                if arc >= check(circle)?.arc_count() {
                    return Err(format!("circle {circle} has no arc {arc}"));
                }
                let mut d = Draft::new(m, m.clone());
                d.identity_all(m.len());
                let f = d.bottom_arcs[circle][arc];
                if matches!(self, Gen::Dot { .. }) {
                    d.facets[f].dots += 1;
                } else {
                    d.facets[f].chi -= 2;
                }
                d.finish()
            }
            Gen::Sigma { circle, sign } => {
                if check(circle)?.is_marked() {
                    return Err(format!("circle {circle} is marked"));
                }
                let mut d = Draft::new(m, m.clone());
                for c in (0..m.len()).filter(|&c| c != circle) {
                    d.identity_circle(c, c);
                }
                let below = d.facet(0);
                let above = d.facet(0);
                d.bottom_arcs[circle][0] = below;
                d.top_arcs[circle][0] = above;
                let prefer_below = (sign == SigmaSign::Plus) != opts.mutate_sigma;
                let (preferred, other) = if prefer_below { (below, above) } else { (above, below) };
                d.seam_circles.push(SeamCircle { preferred, other });
                d.finish()
            }
            Gen::Copants { circle, i, j, ref to_second } => copants(m, circle, i, j, to_second),
            Gen::Pants { a, b, i, j } => pants(m, a, b, i, j),
            Gen::ChordCup { circle, arc, sign } => {
                let k = check(circle)?.marks.len();
                if arc >= k.max(1) {
                    return Err(format!("circle {circle} has no arc {arc}"));
                }
                let p = if k == 0 { 0 } else { arc + 1 };
                let mut top = m.clone();
                top.circles[circle].marks.splice(p..p, [sign, sign.flip()]);
                let mut d = Draft::new(m, top);
                for c in (0..m.len()).filter(|&c| c != circle) {
                    d.identity_circle(c, c);
                }
                let half = d.facet(1);
                if k == 0 {
                    let ring = d.facet(0);
                    d.bottom_arcs[circle][0] = ring;
                    d.top_arcs[circle] = vec![half, ring];
                } else {
                    for l in 0..k {
                        let f = d.facet(1);
                        d.bottom_arcs[circle][l] = f;
                        let shifted = if l < arc { l } else { l + 2 };
                        d.top_arcs[circle][shifted] = f;
                        if l == arc {
                            d.top_arcs[circle][arc] = f;
                        }
                        let mk = if l <= arc { l } else { l + 2 };
                        d.vertical(circle, l, circle, mk);
                    }
                    d.top_arcs[circle][p] = half;
                }
                d.ends.push([Endpoint::new(Level::Top, circle, p), Endpoint::new(Level::Top, circle, p + 1)]);
                d.finish()
            }
            Gen::ChordCap { circle, at } => {
                let marks = &check(circle)?.marks;
                let k = marks.len();
                if k < 2 || at >= k {
                    return Err(format!("circle {circle} has no adjacent marks at {at}"));
                }
                let u = (at + 1) % k;
                if marks[at] == marks[u] {
                    return Err(format!("marks {at} and {u} of circle {circle} have equal signs"));
                }
                let kept: Vec<usize> = (0..k).filter(|&x| x != at && x != u).collect();
                let mut top = m.clone();
                top.circles[circle].marks = kept.iter().map(|&x| marks[x]).collect();
                let mut d = Draft::new(m, top);
                for c in (0..m.len()).filter(|&c| c != circle) {
                    d.identity_circle(c, c);
                }
                let half = d.facet(1);
                d.bottom_arcs[circle][at] = half;
                let before = (at + k - 1) % k;
                let merged = d.facet(if k == 2 { 0 } else { 1 });
                d.bottom_arcs[circle][before] = merged;
                d.bottom_arcs[circle][u] = merged;
                if k == 2 {
                    d.top_arcs[circle][0] = merged;
                }
                for (nj, &old) in kept.iter().enumerate() {
                    let f = if old == before {
                        merged
                    } else {
                        let f = d.facet(1);
                        d.bottom_arcs[circle][old] = f;
                        f
                    };
                    d.top_arcs[circle][nj] = f;
                    d.vertical(circle, old, circle, nj);
                }
                d.ends.push([Endpoint::new(Level::Bottom, circle, at), Endpoint::new(Level::Bottom, circle, u)]);
                d.finish()
            }
            Gen::SeamedCup { parent } => {
                let cup = Gen::Cup { parent }.apply(m, opts)?;
                let chord = Gen::ChordCup { circle: m.len(), arc: 0, sign: Sign::Plus }.apply(&cup.top, opts)?;
                cup.then(&chord).map_err(|e| e.to_string())
            }
            Gen::TwistedTube { parent } => {
                if let Some(p) = parent {
                    check(p)?;
                }
                let n = m.len();
                let mut top = m.clone();
                for _ in 0..2 {
                    top.circles.push(Circle::new(parent, vec![Sign::Plus, Sign::Minus]));
                }
                let mut d = Draft::new(m, top);
                d.identity_all(n);
                let s = d.facet(1);
                let t = d.facet(1);
                d.top_arcs[n] = vec![s, t];
                d.top_arcs[n + 1] = vec![s, t];
                d.ends.push([Endpoint::new(Level::Top, n, 0), Endpoint::new(Level::Top, n + 1, 1)]);
                d.ends.push([Endpoint::new(Level::Top, n, 1), Endpoint::new(Level::Top, n + 1, 0)]);
                d.finish()
            }
            Gen::Rotate { circle, by } => {
                let k = check(circle)?.marks.len();
                let id: Vec<usize> = (0..m.len()).collect();
                let mut rot = vec![0; m.len()];
                rot[circle] = if k == 0 { 0 } else { by % k };
                Ok(Cobordism::identity(m).relabel(Level::Top, &id, &rot))
            }
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for Gen {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gen {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Gen::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// A cobordism written as a start meom and a sequence of generators.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Word {
    #[serde(default)]
    pub start: Meom,
    pub word: Vec<Gen>,
}

impl Word {
    pub fn new(start: Meom) -> Self {
        Word { start, word: vec![] }
    }

    pub fn from_empty(word: Vec<Gen>) -> Self {
        Word { start: Meom::empty(), word }
    }

    pub fn push(mut self, g: Gen) -> Self {
        self.word.push(g);
        self
    }

    pub fn build(&self) -> Result<Cobordism, CobError> {
        self.build_with(BuildOptions::default())
    }

    pub fn build_with(&self, opts: BuildOptions) -> Result<Cobordism, CobError> {
        self.start.validate()?;
        let mut acc = Cobordism::identity(&self.start);
        for (index, g) in self.word.iter().enumerate() {
            let err = |msg: String| CobError::Generator {
                index,
                gen: g.to_string(),
                msg,
            };
            let step = g.apply(&acc.top, opts).map_err(err)?;
            acc = acc.then(&step).map_err(|e| err(e.to_string()))?;
        }
        Ok(acc)
    }
}

/// Identity cobordism `m × [0,1]`.
pub(super) fn identity(m: &Meom) -> Cobordism {
    let mut d = Draft::new(m, m.clone());
    d.identity_all(m.len());
    d.finish().expect("identity is valid")
}

/// Removes a childless circle; returns the meom and old → new indices.
fn remove_circle(m: &Meom, c: usize) -> (Meom, Vec<Option<usize>>) {
    let map: Vec<Option<usize>> = (0..m.len())
        .map(|x| match x.cmp(&c) {
            std::cmp::Ordering::Less => Some(x),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(x - 1),
        })
        .collect();
    let circles = m
        .circles
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != c)
        .map(|(_, circ)| Circle::new(circ.parent.map(|p| map[p].expect("removed circle is childless")), circ.marks.clone()))
        .collect();
    (Meom { circles }, map)
}

fn copants(m: &Meom, circle: usize, i: usize, j: usize, to_second: &[usize]) -> Result<Cobordism, String> {
    let circ = m.circles.get(circle).ok_or_else(|| format!("no circle {circle} in {m}"))?;
    let k = circ.marks.len();
    if i >= k.max(1) || j >= k.max(1) {
        return Err(format!("circle {circle} has no arcs {i}, {j}"));
    }
    let ka = if i == j { 0 } else { (j + k - i) % k };
    let kb = k - ka;
    let a_old = |t: usize| (i + 1 + t) % k;
    let b_old = |t: usize| (j + 1 + t) % k;
    let n = m.len();
    let mut top = m.clone();
    top.circles[circle].marks = (0..ka).map(|t| circ.marks[a_old(t)]).collect();
    top.circles.push(Circle::new(circ.parent, (0..kb).map(|t| circ.marks[b_old(t)]).collect()));
    for &ch in to_second {
        if m.circles.get(ch).and_then(|c| c.parent) != Some(circle) {
            return Err(format!("circle {ch} is not a child of {circle}"));
        }
        top.circles[ch].parent = Some(n);
    }
    let mut d = Draft::new(m, top);
    for c in (0..n).filter(|&c| c != circle) {
        d.identity_circle(c, c);
    }
    let strips = ka.saturating_sub(1) + kb.saturating_sub(1);
    let saddle = d.facet(-1 + k as i64 - strips as i64);
    d.bottom_arcs[circle][i] = saddle;
    d.bottom_arcs[circle][j] = saddle;
    for (tc, kk, old) in [(circle, ka, &a_old as &dyn Fn(usize) -> usize), (n, kb, &b_old)] {
        for t in 0..kk {
            d.vertical(circle, old(t), tc, t);
            if t + 1 < kk {
                let f = d.facet(1);
                d.bottom_arcs[circle][old(t)] = f;
                d.top_arcs[tc][t] = f;
            }
        }
        d.top_arcs[tc][kk.max(1) - 1] = saddle;
    }
    d.finish()
}

fn pants(m: &Meom, a: usize, b: usize, i: usize, j: usize) -> Result<Cobordism, String> {
    let n = m.len();
    if a >= n || b >= n || a == b {
        return Err(format!("pants needs two distinct circles of {m}"));
    }
    let (ca, cb) = (&m.circles[a], &m.circles[b]);
    if ca.parent != cb.parent {
        return Err(format!("circles {a} and {b} are not siblings"));
    }
    let (ka, kb) = (ca.marks.len(), cb.marks.len());
    if i >= ka.max(1) || j >= kb.max(1) {
        return Err(format!("arcs {i}, {j} out of range"));
    }
    let k = ka + kb;
    let rot_of = |kk: usize, x: usize| if kk == 0 { 0 } else { (kk - (x + 1) % kk) % kk };
    let mut merged_marks: Vec<Sign> = (0..ka).map(|t| ca.marks[(i + 1 + t) % ka]).collect();
    merged_marks.extend((0..kb).map(|t| cb.marks[(j + 1 + t) % kb]));
    let mut pre = m.clone();
    for c in &mut pre.circles {
        if c.parent == Some(b) {
            c.parent = Some(a);
        }
    }
    pre.circles[a].marks = merged_marks;
    let (merged, map) = remove_circle(&pre, b);
    let a2 = map[a].unwrap();
    let (ii, jj) = if k == 0 {
        (0, 0)
    } else if ka == 0 || kb == 0 {
        (k - 1, k - 1)
    } else {
        (k - 1, ka - 1)
    };
    let swap = kb == 0 && ka > 0;
    let second_owner = if swap { a } else { b };
    let to_second: Vec<usize> = (0..n)
        .filter(|&x| m.circles[x].parent == Some(second_owner))
        .map(|x| map[x].unwrap())
        .collect();
    let split = copants(&merged, a2, ii, jj, &to_second)?;
    // copants top: indices of `merged`, plus the second piece at n − 1
    let mut back = vec![0; n];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            back[*new] = old;
        }
    }
    let (first_is, second_is) = if swap { (b, a) } else { (a, b) };
    back[a2] = first_is;
    back[n - 1] = second_is;
    let mut rot = vec![0; n];
    for (x, &target) in back.iter().enumerate() {
        if target == a {
            rot[x] = rot_of(ka, i);
        } else if target == b {
            rot[x] = rot_of(kb, j);
        }
    }
    let out = split.relabel(Level::Top, &back, &rot).mirror();
    if out.bottom != *m {
        return Err(format!("internal: pants source {} differs from {}", out.bottom, m));
    }
    Ok(out)
}

/// Facet and seam tables under construction. Seam co-orientation sides are
/// read off the first end; validation checks the second.
struct Draft {
    bottom: Meom,
    top: Meom,
    facets: Vec<CobFacet>,
    bottom_arcs: Vec<Vec<usize>>,
    top_arcs: Vec<Vec<usize>>,
    ends: Vec<[Endpoint; 2]>,
    seam_circles: Vec<SeamCircle>,
}

impl Draft {
    fn new(bottom: &Meom, top: Meom) -> Self {
        let table = |m: &Meom| m.circles.iter().map(|c| vec![usize::MAX; c.arc_count()]).collect();
        Draft {
            bottom_arcs: table(bottom),
            top_arcs: table(&top),
            bottom: bottom.clone(),
            top,
            facets: vec![],
            ends: vec![],
            seam_circles: vec![],
        }
    }

    fn facet(&mut self, chi: i64) -> usize {
        self.facets.push(CobFacet { chi, dots: 0 });
        self.facets.len() - 1
    }

    fn vertical(&mut self, bc: usize, bm: usize, tc: usize, tm: usize) {
        self.ends.push([Endpoint::new(Level::Bottom, bc, bm), Endpoint::new(Level::Top, tc, tm)]);
    }

    /// Product strips between equal circles `b` (bottom) and `t` (top).
    fn identity_circle(&mut self, b: usize, t: usize) {
        let k = self.bottom.circles[b].marks.len();
        if k == 0 {
            let f = self.facet(0);
            self.bottom_arcs[b][0] = f;
            self.top_arcs[t][0] = f;
            return;
        }
        for arc in 0..k {
            let f = self.facet(1);
            self.bottom_arcs[b][arc] = f;
            self.top_arcs[t][arc] = f;
            self.vertical(b, arc, t, arc);
        }
    }

    fn identity_all(&mut self, n: usize) {
        for c in 0..n {
            self.identity_circle(c, c);
        }
    }

    fn finish(self) -> Result<Cobordism, String> {
        let arcs_at = |e: &Endpoint| match e.level {
            Level::Bottom => (&self.bottom, &self.bottom_arcs),
            Level::Top => (&self.top, &self.top_arcs),
        };
        let seam_arcs = self
            .ends
            .iter()
            .map(|ends| {
                let (m, arcs) = arcs_at(&ends[0]);
                let (into, away) = m.circles[ends[0].circle].sides_at(ends[0].mark);
                let row = &arcs[ends[0].circle];
                SeamArc::new(*ends, row[into], row[away])
            })
            .collect();
        let cob = Cobordism {
            bottom: self.bottom,
            top: self.top,
            facets: self.facets,
            bottom_arcs: self.bottom_arcs,
            top_arcs: self.top_arcs,
            seam_arcs,
            seam_circles: self.seam_circles,
        }
        .normalized();
        cob.validate().map_err(|e| e.to_string())?;
        Ok(cob)
    }
}

/// Named cobordisms.
pub mod builders {
    use super::*;

    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub enum Direction {
        Up,
        Down,
    }

    fn build(start: Meom, word: Vec<Gen>) -> Cobordism {
        Word { start, word }.build().expect("builder word is valid")
    }

    fn dots(circle: usize, arc: usize, n: u32) -> Vec<Gen> {
        (0..n).map(|_| Gen::Dot { circle, arc }).collect()
    }

    /// ∅ → S¹.
    pub fn cup() -> Cobordism {
        build(Meom::empty(), vec![Gen::Cup { parent: None }])
    }

    pub fn dotted_cup(n: u32) -> Cobordism {
        let mut w = vec![Gen::Cup { parent: None }];
        w.extend(dots(0, 0, n));
        build(Meom::empty(), w)
    }

    /// S¹ → ∅.
    pub fn cap() -> Cobordism {
        cup().mirror()
    }

    pub fn dotted_cap(n: u32) -> Cobordism {
        dotted_cup(n).mirror()
    }

    pub fn tube(m: &Meom) -> Cobordism {
        Cobordism::identity(m)
    }

    /// S¹ ⊔ S¹ → S¹.
    pub fn pants() -> Cobordism {
        build(Meom::unmarked(2), vec![Gen::Pants { a: 0, b: 1, i: 0, j: 0 }])
    }

    /// S¹ → S¹ ⊔ S¹.
    pub fn copants() -> Cobordism {
        build(Meom::unmarked(1), vec![Gen::Copants { circle: 0, i: 0, j: 0, to_second: vec![] }])
    }

    /// S¹ → S¹ with one seam circle; `Up` prefers the source side.
    pub fn sigma_annulus(dir: Direction) -> Cobordism {
        let sign = match dir {
            Direction::Up => SigmaSign::Plus,
            Direction::Down => SigmaSign::Minus,
        };
        build(Meom::unmarked(1), vec![Gen::Sigma { circle: 0, sign }])
    }

    /// ∅ → S¹₊₋ with `n` dots on the non-preferred half.
    pub fn seamed_cup(n: u32) -> Cobordism {
        let mut w = vec![Gen::SeamedCup { parent: None }];
        w.extend(dots(0, 1, n));
        build(Meom::empty(), w)
    }

    /// S¹₊₋ → S¹₊₋₊₋: a seam arc bitten into the non-preferred arc.
    pub fn seam_saddle() -> Cobordism {
        build(Meom::from_words(&["+-"]), vec![Gen::ChordCup { circle: 0, arc: 1, sign: Sign::Plus }])
    }

    /// ∅ → S¹₊₋ ⊔ S¹₊₋: tube split lengthwise by two seam arcs, `n` dots on
    /// the non-preferred strip.
    pub fn twisted_seamed_tube(n: u32) -> Cobordism {
        let mut w = vec![Gen::TwistedTube { parent: None }];
        w.extend(dots(0, 1, n));
        build(Meom::empty(), w)
    }

    /// Pieces relating S' = S¹₊₋ and S = S¹₊₋₊₋: (S' → S, S → S').
    pub fn marked_point_cancel_pieces() -> (Cobordism, Cobordism) {
        let grow = seam_saddle();
        let shrink = build(Meom::from_words(&["+-+-"]), vec![Gen::ChordCap { circle: 0, at: 2 }]);
        (grow, shrink)
    }

    /// Four elements spanning the state space of S¹₊₋₊₋.
    pub fn alternating_four_elements() -> Vec<Cobordism> {
        let p = vec![
            Gen::Cup { parent: None },
            Gen::ChordCup { circle: 0, arc: 0, sign: Sign::Plus },
            Gen::ChordCup { circle: 0, arc: 1, sign: Sign::Plus },
        ];
        let q = vec![
            Gen::Cup { parent: None },
            Gen::ChordCup { circle: 0, arc: 0, sign: Sign::Minus },
            Gen::ChordCup { circle: 0, arc: 1, sign: Sign::Minus },
            Gen::Rotate { circle: 0, by: 1 },
        ];
        let with = |mut w: Vec<Gen>, arc| {
            w.push(Gen::Dot { circle: 0, arc });
            w
        };
        vec![
            build(Meom::empty(), p.clone()),
            build(Meom::empty(), q.clone()),
            build(Meom::empty(), with(p, 1)),
            build(Meom::empty(), with(q, 0)),
        ]
    }

    /// Two elements spanning the state space of S¹₊₊₋₋.
    pub fn paired_two_elements() -> Vec<Cobordism> {
        let r = vec![
            Gen::Cup { parent: None },
            Gen::ChordCup { circle: 0, arc: 0, sign: Sign::Plus },
            Gen::ChordCup { circle: 0, arc: 0, sign: Sign::Plus },
        ];
        let mut rd = r.clone();
        rd.push(Gen::Dot { circle: 0, arc: 1 });
        vec![build(Meom::empty(), r), build(Meom::empty(), rd)]
    }

    /// The six elements of S¹₊₋ ⊔ S¹₊₋ in increasing degree.
    pub fn two_circle_six_elements() -> Vec<Cobordism> {
        let cups = |d0: u32, d1: u32| {
            let mut w = vec![Gen::SeamedCup { parent: None }, Gen::SeamedCup { parent: None }];
            w.extend(dots(0, 1, d0));
            w.extend(dots(1, 1, d1));
            build(Meom::empty(), w)
        };
        vec![
            cups(0, 0),
            cups(1, 0),
            cups(0, 1),
            twisted_seamed_tube(0),
            cups(1, 1),
            twisted_seamed_tube(1),
        ]
    }
}
