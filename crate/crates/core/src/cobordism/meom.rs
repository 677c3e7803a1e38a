use std::fmt;

use serde::{Deserialize, Serialize};

use super::CobError;

/// Co-orientation of a marked point relative to its circle's canonical
/// orientation (clockwise at even nesting depth, anticlockwise at odd).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn parse(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Circle {
    /// Immediately enclosing circle.
    pub parent: Option<usize>,
    /// Marked points in canonical cyclic order.
    pub marks: Vec<Sign>,
}

impl Circle {
    pub fn new(parent: Option<usize>, marks: Vec<Sign>) -> Self {
        Circle { parent, marks }
    }

    /// Arc `i` runs from mark `i` to mark `i+1`; an unmarked circle is one loop arc.
    pub fn arc_count(&self) -> usize {
        self.marks.len().max(1)
    }

    pub fn is_marked(&self) -> bool {
        !self.marks.is_empty()
    }

    /// Arc the co-orientation at mark `m` points into, and the arc behind it.
    pub fn sides_at(&self, m: usize) -> (usize, usize) {
        let k = self.marks.len();
        let before = (m + k - 1) % k;
        match self.marks[m] {
            Sign::Plus => (m, before),
            Sign::Minus => (before, m),
        }
    }
}

/// Marked embedded one-manifold: a forest of planar circles with
/// co-oriented marked points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Meom {
    pub circles: Vec<Circle>,
}

impl Meom {
    pub fn empty() -> Self {
        Meom::default()
    }

    /// Root-level circles written as sign words, e.g. `["+-", ""]`.
    pub fn from_words(words: &[&str]) -> Self {
        Meom {
            circles: words
                .iter()
                .map(|w| Circle::new(None, w.chars().map(|c| Sign::parse(c).expect("sign word")).collect()))
                .collect(),
        }
    }

    /// `k` unmarked root circles.
    pub fn unmarked(k: usize) -> Self {
        Meom {
            circles: vec![Circle::new(None, vec![]); k],
        }
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.circles
            .iter()
            .flat_map(|c| c.marks.iter())
            .map(|s| s.value())
            .sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 0
    }

    pub fn num_marks(&self) -> usize {
        self.circles.iter().map(|c| c.marks.len()).sum()
    }

    pub fn children(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&d| self.circles[d].parent == Some(c)).collect()
    }

    pub fn depth(&self, c: usize) -> usize {
        let mut d = 0;
        let mut cur = self.circles[c].parent;
        while let Some(p) = cur {
            d += 1;
            cur = self.circles[p].parent;
        }
        d
    }

    pub fn validate(&self) -> Result<(), CobError> {
        let n = self.len();
        for (i, c) in self.circles.iter().enumerate() {
            if let Some(p) = c.parent {
                if p >= n {
                    return Err(CobError::Meom(format!("circle {i} has missing parent {p}")));
                }
            }
            // walk up; a cycle revisits within n steps
            let mut cur = c.parent;
            let mut steps = 0;
            while let Some(p) = cur {
                steps += 1;
                if steps > n {
                    return Err(CobError::Meom(format!("circle {i} lies in a parent cycle")));
                }
                cur = self.circles[p].parent;
            }
        }
        Ok(())
    }

    /// Circles renumbered by `map[old] = new`, with circle `old` rotated so
    /// that new mark `j` is old mark `(j + rot[old]) mod k`.
    pub fn relabeled(&self, map: &[usize], rot: &[usize]) -> Meom {
        let mut circles = vec![Circle::new(None, vec![]); self.len()];
        for (old, c) in self.circles.iter().enumerate() {
            let k = c.marks.len();
            let marks = (0..k).map(|j| c.marks[(j + rot[old]) % k.max(1)]).collect();
            circles[map[old]] = Circle::new(c.parent.map(|p| map[p]), marks);
        }
        Meom { circles }
    }
}

impl fmt::Display for Meom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.circles.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .circles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let w: String = c.marks.iter().map(|s| s.to_string()).collect();
                match c.parent {
                    Some(p) => format!("{i}:S[{w}]<{p}"),
                    None => format!("{i}:S[{w}]"),
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
