//! Piecewise-linear paths and the root operators `e_i`, `f_i`.
//!
//! A path `π: [0,1] → P⊗ℚ` (or `P̂⊗ℚ`) starting at 0 is stored as a list of
//! segments `(direction, duration)`. Paths are kept in canonical form:
//! stationary segments are removed (the remaining time is rescaled to 1) and
//! consecutive segments pointing the same way are merged. Two paths are
//! equal iff their canonical forms are equal, which is equality up to
//! reparametrization for the paths produced by this crate.
//!
//! The height function `h^i(τ) = −⟨α_i^∨, π(τ)⟩` is piecewise linear with
//! breakpoints at the cumulative durations, so all extrema and level
//! crossings are computed exactly.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::weight::{Ambient, Weight};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub dir: Weight,
    pub len: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    segments: Vec<Segment>,
}

/// Breakpoint data of `h^i_π` used by the root operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTimes {
    /// `max h^i_π`, i.e. `ε_i(π)`.
    pub max: i64,
    /// `(e^i_−, e^i_+)`, present iff `ε_i(π) > 0`.
    pub raise: Option<(Q, Q)>,
    /// `(f^i_+, f^i_−)`, present iff `f^i_+ < 1`.
    pub lower: Option<(Q, Q)>,
}

impl Path {
    /// Validates and canonicalizes a list of segments.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let first = segments.first().ok_or_else(|| Error::InvalidPath("no segments".to_string()))?;
        let (size, ambient) = (first.dir.size(), first.dir.ambient());
        let mut total = Q::zero();
        for s in &segments {
            if !s.len.is_positive() {
                return Err(Error::InvalidPath(format!("non-positive duration {}", s.len)));
            }
            if s.dir.ambient() != ambient {
                return Err(Error::AmbientMismatch);
            }
            if s.dir.size() != size {
                return Err(Error::DimensionMismatch(s.dir.size(), size));
            }
            total += &s.len;
        }
        if !total.is_one() {
            return Err(Error::InvalidPath(format!("durations sum to {total}, not 1")));
        }
        let path = Path { segments: canonical(segments, size, ambient) };
        let end = path.endpoint();
        if !end.is_integral() {
            return Err(Error::NonIntegral(format!("endpoint {end}")));
        }
        Ok(path)
    }

    /// The linear path `π_λ(τ) = τλ`.
    pub fn linear(lambda: Weight) -> Result<Self> {
        Path::new(vec![Segment { dir: lambda, len: Q::one() }])
    }

    /// The constant path at 0.
    pub fn constant(size: usize, ambient: Ambient) -> Self {
        Path { segments: vec![Segment { dir: Weight::zero(size, ambient), len: Q::one() }] }
    }

    /// The path through `N` pieces of duration `1/N` with the given directions.
    pub fn from_uniform(dirs: &[Weight]) -> Result<Self> {
        let n = i64::try_from(dirs.len()).map_err(|_| Error::InvalidPath("too many pieces".to_string()))?;
        if n == 0 {
            return Err(Error::InvalidPath("no pieces".to_string()));
        }
        let len = rational::frac(1, n);
        Path::new(dirs.iter().map(|d| Segment { dir: d.clone(), len: len.clone() }).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn ambient(&self) -> Ambient {
        self.segments[0].dir.ambient()
    }

    pub fn size(&self) -> usize {
        self.segments[0].dir.size()
    }

    pub fn is_constant(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].dir.is_zero()
    }

    pub fn is_linear(&self) -> bool {
        self.segments.len() == 1
    }

    /// `wt(π) = π(1)`.
    pub fn endpoint(&self) -> Weight {
        let mut w = Weight::zero(self.size(), self.ambient());
        for s in &self.segments {
            w = &w + &s.dir.scale(&s.len);
        }
        w
    }

    /// Cumulative times `0 = τ_0 < τ_1 < … < τ_K = 1`.
    pub fn breakpoints(&self) -> Vec<Q> {
        let mut t = Q::zero();
        let mut out = vec![t.clone()];
        for s in &self.segments {
            t += &s.len;
            out.push(t.clone());
        }
        out
    }

    /// `π(τ_k)` at every breakpoint.
    pub fn turning_points(&self) -> Vec<Weight> {
        let mut w = Weight::zero(self.size(), self.ambient());
        let mut out = vec![w.clone()];
        for s in &self.segments {
            w = &w + &s.dir.scale(&s.len);
            out.push(w.clone());
        }
        out
    }

    /// Least common multiple of the breakpoint denominators.
    pub fn grid(&self) -> u64 {
        self.breakpoints()
            .iter()
            .map(|t| rational::denom_u64(t).expect("breakpoint denominator fits in u64"))
            .fold(1, rational::lcm_u64)
    }

    fn check(&self, cartan: &CartanData, i: usize) -> Result<()> {
        if self.size() != cartan.size() {
            return Err(Error::DimensionMismatch(self.size(), cartan.size()));
        }
        if i >= cartan.size() {
            return Err(Error::IndexOutOfRange { index: i, size: cartan.size() });
        }
        Ok(())
    }

    /// `h^i_π(τ_k)` at every breakpoint.
    pub fn heights(&self, i: usize) -> Vec<Q> {
        let mut h = Q::zero();
        let mut out = vec![h.clone()];
        for s in &self.segments {
            h -= s.dir.coord(i) * &s.len;
            out.push(h.clone());
        }
        out
    }

    /// Exact maximum of `h^i_π` and the breakpoint times used by `e_i`, `f_i`.
    pub fn root_times(&self, cartan: &CartanData, i: usize) -> Result<RootTimes> {
        self.check(cartan, i)?;
        let hs = self.heights(i);
        let ts = self.breakpoints();
        let max = hs.iter().max().expect("nonempty").clone();
        let eps = rational::to_i64(&max)
            .ok_or_else(|| Error::IntegralityViolation { label: i, value: rational::to_string(&max) })?;
        let target = &max - Q::one();
        let k = hs.len() - 1;

        let raise = if eps > 0 {
            let p = hs.iter().position(|h| *h == max).expect("max attained");
            let mut found = None;
            for j in (0..p).rev() {
                if hs[j + 1] == target {
                    found = Some(ts[j + 1].clone());
                    break;
                }
                if let Some(t) = crossing(&ts, &hs, j, &target) {
                    found = Some(t);
                    break;
                }
            }
            let minus = found
                .or_else(|| (hs[0] == target).then(Q::zero))
                .ok_or_else(|| Error::InvalidPath(format!("h^{i} never reaches {target} before its maximum")))?;
            Some((minus, ts[p].clone()))
        } else {
            None
        };

        let p = hs.iter().rposition(|h| *h == max).expect("max attained");
        let lower = if p < k {
            let mut found = None;
            for j in p..k {
                if let Some(t) = crossing(&ts, &hs, j, &target) {
                    found = Some(t);
                    break;
                }
                if hs[j + 1] == target {
                    found = Some(ts[j + 1].clone());
                    break;
                }
            }
            let minus =
                found.ok_or_else(|| Error::IntegralityViolation { label: i, value: rational::to_string(&hs[k]) })?;
            Some((ts[p].clone(), minus))
        } else {
            None
        };
        Ok(RootTimes { max: eps, raise, lower })
    }

    /// `ε_i(π)`.
    pub fn epsilon(&self, cartan: &CartanData, i: usize) -> Result<i64> {
        self.check(cartan, i)?;
        let hs = self.heights(i);
        let max = hs.iter().max().expect("nonempty");
        rational::to_i64(max).ok_or_else(|| Error::IntegralityViolation { label: i, value: rational::to_string(max) })
    }

    /// `φ_i(π) = ε_i(π) + ⟨α_i^∨, wt π⟩`.
    pub fn phi(&self, cartan: &CartanData, i: usize) -> Result<i64> {
        let eps = self.epsilon(cartan, i)?;
        let pairing = self.endpoint().coord(i).clone();
        let p = rational::to_i64(&pairing).ok_or_else(|| Error::NonIntegral(pairing.to_string()))?;
        Ok(eps + p)
    }

    /// Reflects the directions on `[a, b]` by `s_i` (after splitting there).
    fn reflect_between(&self, cartan: &CartanData, i: usize, a: &Q, b: &Q) -> Result<Path> {
        let root = cartan.root_in(i, self.ambient())?;
        let mut out = Vec::with_capacity(self.segments.len() + 2);
        let mut t = Q::zero();
        for s in &self.segments {
            let end = &t + &s.len;
            let mut cuts = vec![t.clone()];
            for c in [a, b] {
                if *c > t && *c < end {
                    cuts.push(c.clone());
                }
            }
            cuts.push(end.clone());
            cuts.dedup();
            for w in cuts.windows(2) {
                let (lo, hi) = (&w[0], &w[1]);
                let inside = *lo >= *a && *hi <= *b;
                let dir = if inside {
                    let n = s.dir.coord(i).clone();
                    s.dir.try_sub(&root.scale(&n))?
                } else {
                    s.dir.clone()
                };
                out.push(Segment { dir, len: hi - lo });
            }
            t = end;
        }
        Path::new(out)
    }

    /// The root operator `e_i`; `None` when `ε_i(π) = 0`.
    pub fn raise(&self, cartan: &CartanData, i: usize) -> Result<Option<Path>> {
        match self.root_times(cartan, i)?.raise {
            None => Ok(None),
            Some((a, b)) => self.reflect_between(cartan, i, &a, &b).map(Some),
        }
    }

    /// The root operator `f_i`; `None` when `f^i_+ = 1`.
    pub fn lower(&self, cartan: &CartanData, i: usize) -> Result<Option<Path>> {
        match self.root_times(cartan, i)?.lower {
            None => Ok(None),
            Some((a, b)) => self.reflect_between(cartan, i, &a, &b).map(Some),
        }
    }

    /// The simple reflection `s_i` acting through root-operator strings.
    pub fn weyl_act(&self, cartan: &CartanData, i: usize) -> Result<Path> {
        self.check(cartan, i)?;
        let n = rational::to_i64(self.endpoint().coord(i))
            .ok_or_else(|| Error::NonIntegral(self.endpoint().to_string()))?;
        let mut p = self.clone();
        for _ in 0..n.unsigned_abs() {
            let next = if n > 0 { p.lower(cartan, i)? } else { p.raise(cartan, i)? };
            p = next.ok_or(Error::WeylAction(i))?;
        }
        Ok(p)
    }

    /// `π_1 * … * π_k`, each operand traversed in time `1/k`.
    pub fn concat(paths: &[Path]) -> Result<Path> {
        let k = paths.len();
        if k == 0 {
            return Err(Error::InvalidPath("empty concatenation".to_string()));
        }
        let kq = rational::int(k as i64);
        let mut segs = Vec::new();
        for p in paths {
            if p.ambient() != paths[0].ambient() {
                return Err(Error::AmbientMismatch);
            }
            for s in &p.segments {
                segs.push(Segment { dir: s.dir.scale(&kq), len: &s.len / &kq });
            }
        }
        Path::new(segs)
    }

    /// `S_n`: every direction multiplied by `n`.
    pub fn stretch(&self, n: u32) -> Result<Path> {
        if n == 0 {
            return Err(Error::Invalid("stretch factor must be positive".to_string()));
        }
        let c = rational::int(i64::from(n));
        Ok(Path {
            segments: self.segments.iter().map(|s| Segment { dir: s.dir.scale(&c), len: s.len.clone() }).collect(),
        })
    }

    /// `Ξ`: applies `ξ` to every direction.
    pub fn project(&self) -> Result<Path> {
        if self.ambient() == Ambient::Classical {
            return Err(Error::AlreadyClassical);
        }
        Path::new(self.segments.iter().map(|s| Segment { dir: s.dir.without_delta(), len: s.len.clone() }).collect())
    }

    /// Directions `ν_1, …, ν_N` of `π` on the intervals `[(k−1)/N, k/N]`.
    pub fn segment_uniform(&self, n: u64) -> Result<Vec<Weight>> {
        if n == 0 {
            return Err(Error::Invalid("grid size must be positive".to_string()));
        }
        let nq = Q::from_integer(n.into());
        let mut out = Vec::with_capacity(n as usize);
        for s in &self.segments {
            let pieces = &s.len * &nq;
            if !pieces.is_integer() {
                let t = self.breakpoints().into_iter().find(|t| !(t * &nq).is_integer());
                return Err(Error::GridViolation(t.map(|t| rational::to_string(&t)).unwrap_or_default(), n));
            }
            let count = rational::to_i64(&pieces).expect("integral piece count");
            for _ in 0..count {
                out.push(s.dir.clone());
            }
        }
        Ok(out)
    }
}

/// Time in the open segment `j` at which `h` crosses `target`, if any.
fn crossing(ts: &[Q], hs: &[Q], j: usize, target: &Q) -> Option<Q> {
    let (h0, h1) = (&hs[j], &hs[j + 1]);
    let strictly_between = (h0 < target && target < h1) || (h1 < target && target < h0);
    strictly_between.then(|| &ts[j] + (&ts[j + 1] - &ts[j]) * (target - h0) / (h1 - h0))
}

fn canonical(segments: Vec<Segment>, size: usize, ambient: Ambient) -> Vec<Segment> {
    let moving: Q = segments.iter().filter(|s| !s.dir.is_zero()).map(|s| s.len.clone()).sum();
    if moving.is_zero() {
        return vec![Segment { dir: Weight::zero(size, ambient), len: Q::one() }];
    }
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    for s in segments.into_iter().filter(|s| !s.dir.is_zero()) {
        let s = if moving.is_one() { s } else { Segment { dir: s.dir.scale(&moving), len: &s.len / &moving } };
        if let Some(last) = out.last_mut() {
            if last.dir.positive_ratio(&s.dir).is_some() {
                let total = &last.len + &s.len;
                let dir = (&last.dir.scale(&last.len) + &s.dir.scale(&s.len)).scale(&total.recip());
                *last = Segment { dir, len: total };
                continue;
            }
        }
        out.push(s);
    }
    out
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, s) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}*{}", s.dir, s.len)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn a1() -> CartanData {
        CartanData::build("A", 1).unwrap()
    }

    fn lin(w: Weight) -> Path {
        Path::linear(w).unwrap()
    }

    #[test]
    fn linear_path_statistics() {
        let c = a1();
        let w = c.classical_fundamental(1).unwrap();
        let p = lin(w.clone());
        assert_eq!((p.epsilon(&c, 1).unwrap(), p.phi(&c, 1).unwrap()), (0, 1));
        assert_eq!((p.epsilon(&c, 0).unwrap(), p.phi(&c, 0).unwrap()), (1, 0));
        let zero = Path::constant(2, Ambient::Classical);
        for i in 0..2 {
            assert_eq!(zero.epsilon(&c, i).unwrap(), 0);
            assert_eq!(zero.phi(&c, i).unwrap(), 0);
            assert_eq!(zero.raise(&c, i).unwrap(), None);
            assert_eq!(zero.lower(&c, i).unwrap(), None);
        }
        assert!(Path::linear(w.scale(&frac(1, 2))).is_err());
    }

    #[test]
    fn a2_linear_statistics() {
        let c = CartanData::build("A", 2).unwrap();
        let p = lin(c.classical_fundamental(1).unwrap());
        assert_eq!(p.epsilon(&c, 0).unwrap(), 1);
        assert_eq!(p.epsilon(&c, 1).unwrap(), 0);
        assert_eq!(p.epsilon(&c, 2).unwrap(), 0);
        let e0 = p.raise(&c, 0).unwrap().unwrap();
        assert_eq!(e0, lin(-&c.classical_fundamental(2).unwrap()));
    }

    #[test]
    fn a1_root_operators() {
        let c = a1();
        let w = c.classical_fundamental(1).unwrap();
        let (plus, minus) = (lin(w.clone()), lin(-&w));
        assert_eq!(plus.raise(&c, 0).unwrap(), Some(minus.clone()));
        assert_eq!(plus.raise(&c, 1).unwrap(), None);
        assert_eq!(plus.lower(&c, 1).unwrap(), Some(minus.clone()));
        assert_eq!(minus.lower(&c, 1).unwrap(), None);
        assert_eq!(minus.lower(&c, 0).unwrap(), Some(plus.clone()));
        assert_eq!(plus.weyl_act(&c, 1).unwrap(), minus);
    }

    #[test]
    fn root_times_of_linear_path() {
        let c = a1();
        let p = lin(c.classical_fundamental(1).unwrap());
        let t0 = p.root_times(&c, 0).unwrap();
        assert_eq!(t0.max, 1);
        assert_eq!(t0.raise, Some((int(0), int(1))));
        assert_eq!(t0.lower, None);
        let t1 = p.root_times(&c, 1).unwrap();
        assert_eq!(t1.max, 0);
        assert_eq!(t1.lower, Some((int(0), int(1))));
    }

    #[test]
    fn non_integral_maximum_is_rejected() {
        let c = a1();
        // Up by ϖ for half the time then down by 3ϖ: endpoint −ϖ, h^1 peaks at −1/2 … use
        // the opposite orientation so that the peak of h^1 is 1/2.
        let w = c.classical_fundamental(1).unwrap();
        let p =
            Path::new(vec![Segment { dir: -&w, len: frac(1, 2) }, Segment { dir: w.scale(&int(3)), len: frac(1, 2) }])
                .unwrap();
        assert!(matches!(p.epsilon(&c, 1), Err(Error::IntegralityViolation { .. })));
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let c = a1();
        let w = c.classical_fundamental(1).unwrap();
        let p = lin(w.clone());
        let two = Path::concat(&[p.clone(), p.clone()]).unwrap();
        assert_eq!(two, p.stretch(2).unwrap());
        assert_eq!(two, lin(w.scale(&int(2))));
        let zero = Path::constant(2, Ambient::Classical);
        assert_eq!(Path::concat(&[p.clone(), zero.clone()]).unwrap(), p);
        let mixed = Path::concat(&[p.clone(), lin(-&w)]).unwrap();
        assert_eq!(mixed.segments().len(), 2);
        assert!(mixed.endpoint().is_zero());
        assert!(Path::new(vec![Segment { dir: w.clone(), len: frac(1, 2) }]).is_err());
    }

    #[test]
    fn segment_uniform_round_trip() {
        let c = a1();
        let w = c.classical_fundamental(1).unwrap();
        let p = lin(w.clone());
        assert_eq!(p.segment_uniform(2).unwrap(), vec![w.clone(), w.clone()]);
        let two = Path::concat(&[p.clone(), lin(-&w)]).unwrap();
        let dirs = two.segment_uniform(2).unwrap();
        assert_eq!(dirs, vec![w.scale(&int(2)), (-&w).scale(&int(2))]);
        assert_eq!(Path::from_uniform(&dirs).unwrap(), two);
        assert!(matches!(two.segment_uniform(3), Err(Error::GridViolation(..))));
        assert_eq!(two.grid(), 2);
    }

    #[test]
    fn projection() {
        let c = a1();
        let w = c.classical_fundamental(1).unwrap();
        let aff = lin(w.scale(&int(2)).with_delta(int(1)));
        assert_eq!(aff.project().unwrap(), lin(w.scale(&int(2))));
        assert_eq!(lin(w).project(), Err(Error::AlreadyClassical));
    }
}
