//! The four families of order-`n`, diameter-`(n-2)` graphs: a path
//! `v1 .. v(n-1)` plus a spire `vn` joined to `vs` and, for the variants,
//! also to `v(s-1)` and/or `v(s-2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `S_{n,s}`: spire joined to `vs` only.
    #[serde(rename = "spire")]
    Plain,
    /// `S^1_{n,s}`: spire joined to `vs` and `v(s-1)`.
    S1,
    /// `S^2_{n,s}`: spire joined to `vs` and `v(s-2)`.
    S2,
    /// `S^{1,2}_{n,s}`: spire joined to `vs`, `v(s-1)` and `v(s-2)`.
    S12,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Plain, Variant::S1, Variant::S2, Variant::S12];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "spire",
            Variant::S1 => "s1",
            Variant::S2 => "s2",
            Variant::S12 => "s12",
        }
    }

    /// Offsets `o` such that the spire is adjacent to `v(s-o)`.
    fn offsets(self) -> &'static [usize] {
        match self {
            Variant::Plain => &[0],
            Variant::S1 => &[0, 1],
            Variant::S2 => &[0, 2],
            Variant::S12 => &[0, 1, 2],
        }
    }

    /// `c` in the mirror map `s -> n + c - s`.
    fn mirror_shift(self) -> usize {
        match self {
            Variant::Plain => 0,
            Variant::S1 => 1,
            Variant::S2 | Variant::S12 => 2,
        }
    }

    fn s_min(self) -> usize {
        match self {
            Variant::Plain | Variant::S1 => 2,
            Variant::S2 | Variant::S12 => 3,
        }
    }

    fn s_max(self, n: usize) -> usize {
        match self {
            Variant::Plain => n - 2,
            _ => n - 1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "spire" | "plain" => Ok(Variant::Plain),
            "s1" => Ok(Variant::S1),
            "s2" => Ok(Variant::S2),
            "s12" => Ok(Variant::S12),
            other => Err(SpecError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid {variant} spec: n={n}, s={s} ({reason})")]
    InvalidSpec {
        n: usize,
        s: usize,
        variant: Variant,
        reason: &'static str,
    },
    #[error("unknown family {0:?}; expected spire, s1, s2 or s12")]
    UnknownFamily(String),
}

/// Identifies one member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpireSpec {
    #[serde(rename = "family")]
    pub variant: Variant,
    pub n: usize,
    pub s: usize,
}

impl fmt::Display for SpireSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, s={})", self.variant, self.n, self.s)
    }
}

impl SpireSpec {
    pub fn new(variant: Variant, n: usize, s: usize) -> Result<Self, SpecError> {
        let spec = SpireSpec { variant, n, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn plain(n: usize, s: usize) -> Result<Self, SpecError> {
        Self::new(Variant::Plain, n, s)
    }

    fn invalid(&self, reason: &'static str) -> SpecError {
        SpecError::InvalidSpec {
            n: self.n,
            s: self.s,
            variant: self.variant,
            reason,
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.n < 4 {
            return Err(self.invalid("order must be at least 4"));
        }
        if self.s < self.variant.s_min() || self.s > self.variant.s_max(self.n) {
            return Err(self.invalid("attachment index out of range"));
        }
        Ok(())
    }

    /// Largest attachment index of the normalized form.
    pub fn normalized_s_max(variant: Variant, n: usize) -> usize {
        (n + variant.mirror_shift()) / 2
    }

    pub fn is_normalized(&self) -> bool {
        self.s <= Self::normalized_s_max(self.variant, self.n)
    }

    /// Mirror image under `vi -> v(n-i)` for path vertices, with the spire fixed.
    pub fn mirror(&self) -> SpireSpec {
        SpireSpec {
            s: self.n + self.variant.mirror_shift() - self.s,
            ..*self
        }
    }

    /// Representative with `s` in the normalized range.
    pub fn normalize(&self) -> Result<SpireSpec, SpecError> {
        self.validate()?;
        Ok(if self.is_normalized() {
            *self
        } else {
            self.mirror()
        })
    }

    /// `n / 2` rounded down; the `k` of `n = 2k` or `n = 2k + 1`.
    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// Vertices the spire is joined to.
    pub fn spire_neighbors(&self) -> Vec<usize> {
        self.variant.offsets().iter().map(|o| self.s - o).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
        e.extend(self.spire_neighbors().into_iter().map(|v| (v, n)));
        e
    }

    /// Path-reflection map from `build(self)` onto `build(self.mirror())`:
    /// entry `v - 1` is the image of `v`.
    pub fn mirror_map(&self) -> Vec<usize> {
        let n = self.n;
        (1..=n).map(|v| if v == n { n } else { n - v }).collect()
    }

    /// The path reflection when it maps `build(self)` onto itself.
    pub fn mirror_automorphism(&self) -> Option<Vec<usize>> {
        (self.mirror().s == self.s).then(|| self.mirror_map())
    }

    /// Every valid spec of order `n` (normalized or not).
    pub fn all_of_order(n: usize) -> Vec<SpireSpec> {
        let mut out = Vec::new();
        if n < 4 {
            return out;
        }
        for variant in Variant::ALL {
            for s in variant.s_min()..=variant.s_max(n) {
                out.push(SpireSpec { variant, n, s });
            }
        }
        out
    }

    /// Normalized specs of order `n`.
    pub fn normalized_of_order(n: usize) -> Vec<SpireSpec> {
        Self::all_of_order(n)
            .into_iter()
            .filter(SpireSpec::is_normalized)
            .collect()
    }
}

/// Builds the graph for `spec`, rejecting anything whose diameter is not `n - 2`.
pub fn build_spire(spec: &SpireSpec) -> Result<Graph, SpecError> {
    spec.validate()?;
    let g = Graph::new(spec.n, spec.edges()).map_err(|_| spec.invalid("graph is disconnected"))?;
    if g.diameter() as usize != spec.n - 2 {
        return Err(spec.invalid("diameter is not n-2"));
    }
    Ok(g)
}

/// Normalized spec whose graph is isomorphic to `g`, if any.
pub fn classify(g: &Graph) -> Option<SpireSpec> {
    let n = g.order();
    if n < 4 || g.diameter() as usize != n - 2 {
        return None;
    }
    SpireSpec::normalized_of_order(n).into_iter().find(|spec| {
        let Ok(h) = build_spire(spec) else {
            return false;
        };
        h.size() == g.size() && isomorphism(&h, g).is_some()
    })
}

/// A vertex bijection `f` (as `f[v - 1]`) with `d_h(f(u), f(v)) = d_g(u, v)`,
/// found by backtracking over distance-profile-compatible candidates.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() || g.diameter() != h.diameter() {
        return None;
    }
    let profile = |x: &Graph, v: usize| {
        let mut row: Vec<u32> = x.vertices().map(|w| x.dist(v, w)).collect();
        row.sort_unstable();
        row
    };
    let pg: Vec<_> = g.vertices().map(|v| profile(g, v)).collect();
    let ph: Vec<_> = h.vertices().map(|v| profile(h, v)).collect();
    let mut a = pg.clone();
    let mut b = ph.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }

    fn extend(
        g: &Graph,
        h: &Graph,
        pg: &[Vec<u32>],
        ph: &[Vec<u32>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let v = map.len() + 1;
        if v > g.order() {
            return true;
        }
        for w in h.vertices() {
            if used[w - 1] || pg[v - 1] != ph[w - 1] {
                continue;
            }
            let consistent = map
                .iter()
                .enumerate()
                .all(|(i, &img)| g.dist(i + 1, v) == h.dist(img, w));
            if consistent {
                map.push(w);
                used[w - 1] = true;
                if extend(g, h, pg, ph, map, used) {
                    return true;
                }
                map.pop();
                used[w - 1] = false;
            }
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(g, h, &pg, &ph, &mut map, &mut used).then_some(map)
}
