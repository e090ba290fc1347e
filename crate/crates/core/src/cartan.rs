//! Untwisted affine Cartan data.
//!
//! The affine matrix is built from the finite Cartan matrix (Bourbaki
//! numbering) and its highest root `θ`: node 0 is attached through
//! `a_0j = −⟨θ^∨, α_j⟩` and `a_j0 = −⟨α_j^∨, θ⟩`. Marks, comarks and the
//! symmetrizer are then recomputed from the affine matrix itself.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::weight::{Ambient, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    /// Accepts `A`–`D` with any valid rank, and `E6`/`E7`/`E8`/`F4`/`G2`
    /// (or `E`/`F`/`G`) with the matching rank.
    pub fn new(label: &str, rank: usize) -> Result<Self> {
        let label = label.trim().to_ascii_uppercase();
        let bad = |why: &str| Err(Error::InvalidType(format!("{label}{rank}: {why}")));
        let t = match label.as_str() {
            "A" if rank >= 1 => CartanType::A(rank),
            "A" => return bad("type A requires rank >= 1"),
            "B" if rank >= 2 => CartanType::B(rank),
            "B" => return bad("type B requires rank >= 2"),
            "C" if rank >= 2 => CartanType::C(rank),
            "C" => return bad("type C requires rank >= 2"),
            "D" if rank >= 4 => CartanType::D(rank),
            "D" => return bad("type D requires rank >= 4"),
            "E" | "E6" | "E7" | "E8" => {
                let want = label[1..].parse::<usize>().unwrap_or(rank);
                match (want, rank) {
                    (6, 6) => CartanType::E6,
                    (7, 7) => CartanType::E7,
                    (8, 8) => CartanType::E8,
                    _ => return bad("type E requires rank 6, 7 or 8 matching the label"),
                }
            }
            "F" | "F4" if rank == 4 => CartanType::F4,
            "F" | "F4" => return bad("type F requires rank 4"),
            "G" | "G2" if rank == 2 => CartanType::G2,
            "G" | "G2" => return bad("type G requires rank 2"),
            _ => return bad("unknown type label (expected A, B, C, D, E6, E7, E8, F4 or G2)"),
        };
        Ok(t)
    }

    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// The label used in serialized output: `A`, `B`, `C`, `D`, `E6`, …
    pub fn label(self) -> &'static str {
        match self {
            CartanType::A(_) => "A",
            CartanType::B(_) => "B",
            CartanType::C(_) => "C",
            CartanType::D(_) => "D",
            CartanType::E6 => "E6",
            CartanType::E7 => "E7",
            CartanType::E8 => "E8",
            CartanType::F4 => "F4",
            CartanType::G2 => "G2",
        }
    }

    /// Finite Cartan matrix, indices `0..rank` standing for nodes `1..=rank`.
    fn finite_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        match self {
            CartanType::A(n) => (1..n).for_each(|k| link(k, k + 1, -1, -1)),
            CartanType::B(n) => {
                (1..n - 1).for_each(|k| link(k, k + 1, -1, -1));
                link(n - 1, n, -1, -2);
            }
            CartanType::C(n) => {
                (1..n - 1).for_each(|k| link(k, k + 1, -1, -1));
                link(n - 1, n, -2, -1);
            }
            CartanType::D(n) => {
                (1..n - 1).for_each(|k| link(k, k + 1, -1, -1));
                link(n - 2, n, -1, -1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                (3..n).for_each(|k| link(k, k + 1, -1, -1));
            }
            CartanType::F4 => {
                link(1, 2, -1, -1);
                link(2, 3, -1, -2);
                link(3, 4, -1, -1);
            }
            CartanType::G2 => link(1, 2, -3, -1),
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => {
                write!(f, "{}{}", self.label(), n)
            }
            _ => f.write_str(self.label()),
        }
    }
}

/// Affine Cartan matrix with marks, comarks and symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    kind: CartanType,
    matrix: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    symmetrizer: Vec<i64>,
}

impl CartanData {
    pub fn build(label: &str, rank: usize) -> Result<Self> {
        Self::from_type(CartanType::new(label, rank)?)
    }

    pub fn from_type(kind: CartanType) -> Result<Self> {
        let fin = kind.finite_matrix();
        let n = fin.len();
        let theta = highest_root(&fin);
        let d = symmetrizer(&fin)?;
        // (θ,θ) with (α_i, α_j) = d_i a_ij.
        let mut norm = 0i64;
        for i in 0..n {
            for j in 0..n {
                norm += theta[i] * theta[j] * d[i] * fin[i][j];
            }
        }
        let co_theta: Vec<i64> = (0..n)
            .map(|k| {
                let num = theta[k] * 2 * d[k];
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect();
        let mut matrix = vec![vec![0i64; n + 1]; n + 1];
        matrix[0][0] = 2;
        for j in 0..n {
            matrix[0][j + 1] = -(0..n).map(|k| co_theta[k] * fin[k][j]).sum::<i64>();
            matrix[j + 1][0] = -(0..n).map(|k| fin[j][k] * theta[k]).sum::<i64>();
            for i in 0..n {
                matrix[i + 1][j + 1] = fin[i][j];
            }
        }
        let marks = null_vector(&matrix)?;
        let transpose: Vec<Vec<i64>> = (0..=n).map(|j| (0..=n).map(|i| matrix[i][j]).collect()).collect();
        let comarks = null_vector(&transpose)?;
        let symmetrizer = symmetrizer(&matrix)?;
        Ok(CartanData { kind, matrix, marks, comarks, symmetrizer })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.kind
    }

    pub fn type_label(&self) -> &'static str {
        self.kind.label()
    }

    /// The rank `ℓ` of the underlying finite algebra.
    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    /// `|Î| = ℓ + 1`.
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.size() })
        }
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.size() != self.size() {
            return Err(Error::DimensionMismatch(w.size(), self.size()));
        }
        Ok(())
    }

    /// `⟨α_i^∨, λ⟩`.
    pub fn pairing(&self, i: usize, w: &Weight) -> Result<Q> {
        self.check_index(i)?;
        self.check_weight(w)?;
        Ok(w.coord(i).clone())
    }

    /// `⟨c, λ⟩ = Σ a_i^∨ ⟨α_i^∨, λ⟩`.
    pub fn level(&self, w: &Weight) -> Result<Q> {
        self.check_weight(w)?;
        Ok(self.comarks.iter().zip(w.coords()).map(|(&c, x)| rational::int(c) * x).sum())
    }

    /// `α_j` in `P̂`: coordinates `a_ij` and δ-coordinate `δ_{j,0}`.
    pub fn simple_root(&self, j: usize) -> Result<Weight> {
        self.check_index(j)?;
        let coords = (0..self.size()).map(|i| rational::int(self.matrix[i][j])).collect();
        Ok(Weight::affine(coords, rational::int(i64::from(j == 0))))
    }

    /// `α_j` in the requested ambient.
    pub fn root_in(&self, j: usize, ambient: Ambient) -> Result<Weight> {
        let root = self.simple_root(j)?;
        Ok(match ambient {
            Ambient::Affine => root,
            Ambient::Classical => root.without_delta(),
        })
    }

    /// `s_i λ = λ − ⟨α_i^∨, λ⟩ α_i`, computed in the ambient of `λ`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        let n = self.pairing(i, w)?;
        let root = self.root_in(i, w.ambient())?;
        w.try_sub(&root.scale(&n))
    }

    /// The projection `ξ: P̂ → P`.
    pub fn classical_project(&self, w: &Weight) -> Result<Weight> {
        self.check_weight(w)?;
        match w.ambient() {
            Ambient::Affine => Ok(w.without_delta()),
            Ambient::Classical => Err(Error::AlreadyClassical),
        }
    }

    /// `Λ_i` in `P̂` with zero δ-coordinate.
    pub fn fundamental(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let mut coords = vec![0i64; self.size()];
        coords[i] = 1;
        Ok(Weight::from_ints(&coords, Some(0)))
    }

    /// The level-zero weight `ϖ_i = Λ_i − a_i^∨ Λ_0`, `1 ≤ i ≤ ℓ`, in `P`.
    pub fn classical_fundamental(&self, i: usize) -> Result<Weight> {
        if i == 0 || i >= self.size() {
            return Err(Error::IndexOutOfRange { index: i, size: self.size() });
        }
        let mut coords = vec![0i64; self.size()];
        coords[i] = 1;
        coords[0] = -self.comarks[i];
        Ok(Weight::from_ints(&coords, None))
    }

    /// The null root `δ`.
    pub fn delta(&self) -> Weight {
        let mut w = Weight::zero(self.size(), Ambient::Affine);
        w = w.with_delta(Q::one());
        w
    }

    /// `θ = −ξ(α_0)` as a classical weight.
    pub fn theta(&self) -> Weight {
        -&self.root_in(0, Ambient::Classical).expect("node 0 exists")
    }

    /// Builds `Σ coeffs[i] ϖ_i + delta·δ` (affine if `delta` is given).
    /// `coeffs` is indexed by `1..=ℓ`; index 0 is ignored.
    pub fn weight_from_fundamentals(&self, coeffs: &[Q], delta: Option<Q>) -> Result<Weight> {
        if coeffs.len() != self.size() {
            return Err(Error::DimensionMismatch(coeffs.len(), self.size()));
        }
        let mut w = Weight::zero(self.size(), Ambient::Classical);
        for (i, c) in coeffs.iter().enumerate().skip(1) {
            w = &w + &self.classical_fundamental(i)?.scale(c);
        }
        Ok(match delta {
            Some(d) => w.with_delta(d),
            None => w,
        })
    }

    /// Checks the defining invariants; returns a list of human-readable
    /// violations (empty when everything holds).
    pub fn self_check(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.size();
        for i in 0..n {
            if self.matrix[i][i] != 2 {
                bad.push(format!("a_{i}{i} = {} != 2", self.matrix[i][i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.matrix[i][j] > 0 {
                    bad.push(format!("a_{i}{j} = {} > 0", self.matrix[i][j]));
                }
                if (self.matrix[i][j] == 0) != (self.matrix[j][i] == 0) {
                    bad.push(format!("a_{i}{j} and a_{j}{i} not simultaneously zero"));
                }
                if self.symmetrizer[i] * self.matrix[i][j] != self.symmetrizer[j] * self.matrix[j][i] {
                    bad.push(format!("d_i a_ij not symmetric at ({i},{j})"));
                }
            }
            let row: i64 = (0..n).map(|j| self.matrix[i][j] * self.marks[j]).sum();
            if row != 0 {
                bad.push(format!("(A marks)_{i} = {row}"));
            }
            let col: i64 = (0..n).map(|k| self.comarks[k] * self.matrix[k][i]).sum();
            if col != 0 {
                bad.push(format!("(comarks A)_{i} = {col}"));
            }
        }
        if self.marks.iter().chain(&self.comarks).chain(&self.symmetrizer).any(|&x| x <= 0) {
            bad.push("marks, comarks and symmetrizer must be positive".to_string());
        }
        if self.marks[0] != 1 || self.comarks[0] != 1 {
            bad.push(format!("a_0 = {}, a_0^v = {}", self.marks[0], self.comarks[0]));
        }
        let g = self.symmetrizer.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            bad.push(format!("symmetrizer has common factor {g}"));
        }
        bad
    }
}

/// Highest root of a finite Cartan matrix, in simple-root coordinates,
/// found by closing the simple roots under the simple reflections.
fn highest_root(fin: &[Vec<i64>]) -> Vec<i64> {
    let n = fin.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            e
        })
        .collect();
    while let Some(beta) = stack.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..n {
            let p: i64 = (0..n).map(|j| fin[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= p;
            if img.iter().all(|&x| x >= 0) && !seen.contains(&img) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().max_by_key(|b| b.iter().sum::<i64>()).expect("root system is nonempty")
}

/// Positive coprime `d` with `d_i a_ij = d_j a_ji`, by propagation along
/// the Dynkin diagram.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let di = d[i].clone().expect("visited");
        for j in 0..n {
            if i == j || a[i][j] == 0 {
                continue;
            }
            let dj = &di * rational::frac(a[i][j], a[j][i]);
            match &d[j] {
                Some(old) if *old != dj => return Err(Error::InvalidType("matrix is not symmetrizable".to_string())),
                Some(_) => {}
                None => {
                    d[j] = Some(dj);
                    queue.push(j);
                }
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::InvalidType("Dynkin diagram is disconnected".to_string())))
        .collect::<Result<_>>()?;
    Ok(primitive_integer(&d))
}

/// Scales a positive rational vector to the primitive integer vector.
fn primitive_integer(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64().expect("small integer")).collect()
}

/// The positive primitive integer vector spanning the kernel of `m`
/// (`m · v = 0`). Fails unless the kernel is one-dimensional and spanned by
/// a vector of constant sign.
fn null_vector(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    let mut rows: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::InvalidType(format!("kernel has dimension {}", free.len())));
    }
    let f = free[0];
    let mut v = vec![Q::zero(); n];
    v[f] = Q::one();
    for (row, &c) in pivots.iter().enumerate() {
        v[c] = -rows[row][f].clone();
    }
    if v.iter().all(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    if !v.iter().all(|x| x.is_positive()) {
        return Err(Error::InvalidType("kernel vector is not positive".to_string()));
    }
    Ok(primitive_integer(&v))
}
