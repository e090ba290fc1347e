//! The crystal lattice of `V(t_1) ⊗ V(t_2)`.
//!
//! `𝓛` is the `𝒜`-span of the basis `F^{(s_1)} v_1 ⊗ F^{(s_2)} v_2`, where
//! `𝒜` is the ring of rational functions regular at `q = 0`. It is also the
//! direct sum of the `𝒜 F^{(b)} u_r`, where `u_r` is the highest-weight
//! vector of weight `t_1 + t_2 − 2r` normalized so that
//! `u_r ≡ v_1 ⊗ F^{(r)} v_2 (mod q𝓛)`. Reduction modulo `q𝓛` is read off
//! from coordinates regular at 0, evaluated at `q = 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::module::{Op, TensorVector};
use super::poly::QScalar;
use crate::crystal::{CrystalKind, Sl2Crystal, Sl2Elem, Tensor, TensorCrystal};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::report::Report;

/// `c_{r,a} = (−1)^a q^{a(t−r+2)} Π_{j=1}^{a} (1 − q^{2(t_2−r+j)}) / (1 − q^{2(t−j+2)})`
/// with `t = t_1 − 1`.
pub fn closed_form_coeff(t1: u32, t2: u32, r: u32, a: u32) -> Result<QScalar> {
    let t = i64::from(t1) - 1;
    let (t2, r, a) = (i64::from(t2), i64::from(r), i64::from(a));
    let sign = if a % 2 == 0 { QScalar::one() } else { QScalar::from_int(-1) };
    let mut c = &sign * &QScalar::q_pow(a * (t - r + 2));
    for j in 1..=a {
        let num = &QScalar::one() - &QScalar::q_pow(2 * (t2 - r + j));
        let den = &QScalar::one() - &QScalar::q_pow(2 * (t - j + 2));
        c = &c * &num.div(&den)?;
    }
    Ok(c)
}

/// `u_r = Σ_a c_{r,a} F^{(a)} v_1 ⊗ F^{(r−a)} v_2`.
pub fn singular_vector(t1: u32, t2: u32, r: u32) -> Result<TensorVector> {
    if r > t1.min(t2) {
        return Err(Error::Invalid(format!("no singular vector u_{r} in V({t1}) ⊗ V({t2})")));
    }
    let shape = [t1, t2];
    let mut u = TensorVector::zero(&shape);
    for a in 0..=r {
        let c = closed_form_coeff(t1, t2, r, a)?;
        u = u.try_add(&TensorVector::basis(&shape, &[a, r - a])?.scale(&c))?;
    }
    Ok(u)
}

pub fn singular_vectors(t1: u32, t2: u32) -> Result<Vec<TensorVector>> {
    (0..=t1.min(t2)).map(|r| singular_vector(t1, t2, r)).collect()
}

/// Solves `E u = 0` in the weight space `t_1 + t_2 − 2r`, normalized by
/// the coefficient 1 at `v_1 ⊗ F^{(r)} v_2`.
pub fn singular_vector_by_kernel(t1: u32, t2: u32, r: u32) -> Result<TensorVector> {
    let shape = [t1, t2];
    let cols: Vec<u32> = (r.saturating_sub(t2)..=r.min(t1)).collect();
    if cols.first() != Some(&0) {
        return Err(Error::Invalid(format!("weight space of u_{r} lacks v_1 ⊗ F^({r}) v_2")));
    }
    let images: Vec<TensorVector> =
        cols.iter().map(|&a| Ok(TensorVector::basis(&shape, &[a, r - a])?.act(Op::E(1)))).collect::<Result<_>>()?;
    let rows: Vec<Vec<u32>> =
        TensorVector::indices(&shape).into_iter().filter(|idx| idx[0] + idx[1] + 1 == r).collect();
    // Unknowns x_a for a ≠ 0; the a = 0 column moves to the right-hand side.
    let mat: Vec<Vec<QScalar>> =
        rows.iter().map(|row| images[1..].iter().map(|img| img.coord(row)).collect()).collect();
    let rhs: Vec<QScalar> = rows.iter().map(|row| -&images[0].coord(row)).collect();
    let x = solve(mat, rhs)?;
    let mut u = TensorVector::basis(&shape, &[0, r])?;
    for (k, &a) in cols.iter().enumerate().skip(1) {
        u = u.try_add(&TensorVector::basis(&shape, &[a, r - a])?.scale(&x[k - 1]))?;
    }
    Ok(u)
}

/// Unique solution of a consistent linear system over `ℚ(q)`.
fn solve(mut mat: Vec<Vec<QScalar>>, mut rhs: Vec<QScalar>) -> Result<Vec<QScalar>> {
    let n = mat.first().map_or(0, Vec::len);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..mat.len()).find(|&k| !mat[k][col].is_zero()) else {
            return Err(Error::Invalid("singular system".into()));
        };
        mat.swap(row, p);
        rhs.swap(row, p);
        let inv = mat[row][col].inv()?;
        for x in mat[row].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        let (pivot, pivot_rhs) = (mat[row].clone(), rhs[row].clone());
        for (k, (line, b)) in mat.iter_mut().zip(rhs.iter_mut()).enumerate() {
            if k != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
                *b = &*b - &(&f * &pivot_rhs);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rhs[row..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Invalid("inconsistent system".into()));
    }
    Ok(rhs[..n].to_vec())
}

/// Coordinates `(r, b, c)` of `v = Σ c · F^{(b)} u_r` in the string basis.
pub fn string_coordinates(v: &TensorVector, sing: &[TensorVector]) -> Result<Vec<(u32, u32, QScalar)>> {
    let top = v.top_weight();
    let mut out = Vec::new();
    for (s, u) in v.string_decompose()? {
        let w = u.weight()?.expect("nonzero component");
        let r = u32::try_from((top - w) / 2).map_err(|_| Error::ShapeMismatch)?;
        let base = sing.get(r as usize).ok_or(Error::ShapeMismatch)?;
        let c = u.coord(&[0, r]);
        if base.scale(&c) != u {
            return Err(Error::Invalid(format!("string component u_{r} is not a multiple of the singular vector")));
        }
        out.push((r, s, c));
    }
    Ok(out)
}

/// The basis vector congruent to `v` modulo `q𝓛`, or `None` when
/// `v ∈ q𝓛`.
pub fn reduce_mod_q(v: &TensorVector) -> Result<Option<Vec<u32>>> {
    let mut hits = Vec::new();
    for (idx, c) in v.coords() {
        let value = c.eval_at_zero()?;
        if !value.is_zero() {
            hits.push((idx.clone(), value));
        }
    }
    match hits.as_slice() {
        [] => Ok(None),
        [(idx, value)] if value.is_one() => Ok(Some(idx.clone())),
        _ => Err(Error::Invalid(format!("{v} is not a basis vector modulo q𝓛"))),
    }
}

/// One row of the crystal limit table: `ẽ` and `f̃` of
/// `F^{(s_1)} v_1 ⊗ F^{(s_2)} v_2` modulo `q𝓛`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitRow {
    pub s1: u32,
    pub s2: u32,
    pub e: Option<(u32, u32)>,
    pub f: Option<(u32, u32)>,
}

fn pair(idx: Option<Vec<u32>>) -> Option<(u32, u32)> {
    idx.map(|v| (v[0], v[1]))
}

pub fn crystal_limit_table(t1: u32, t2: u32) -> Result<Vec<LimitRow>> {
    let shape = [t1, t2];
    TensorVector::indices(&shape)
        .into_iter()
        .map(|idx| {
            let v = TensorVector::basis(&shape, &idx)?;
            let e = v.kashiwara_e()?;
            let f = v.kashiwara_f()?;
            if !e.in_lattice() || !f.in_lattice() {
                return Err(Error::NotInLattice);
            }
            Ok(LimitRow { s1: idx[0], s2: idx[1], e: pair(reduce_mod_q(&e)?), f: pair(reduce_mod_q(&f)?) })
        })
        .collect()
}

/// Targets `(s_1, s_2)` of `ẽ` and `f̃`; `None` where the operator gives zero.
pub type Transition = (Option<(u32, u32)>, Option<(u32, u32)>);

/// The four-case action on `F^{(s_1)} v_1 ⊗ F^{(s_2)} v_2`: `ẽ` acts on the
/// first factor iff `t_1 ≥ s_1 + s_2`, `f̃` iff `t_1 > s_1 + s_2`; a
/// divided power outside `0..=t_j` is zero.
pub fn case_table_prediction(t1: u32, t2: u32, s1: u32, s2: u32) -> Transition {
    let e = if t1 >= s1 + s2 { s1.checked_sub(1).map(|x| (x, s2)) } else { s2.checked_sub(1).map(|x| (s1, x)) };
    let f = if t1 > s1 + s2 { (s1 < t1).then_some((s1 + 1, s2)) } else { (s2 < t2).then_some((s1, s2 + 1)) };
    (e, f)
}

/// The same action computed by the generic tensor product rule on
/// `B(t_1) ⊗ B(t_2)`.
pub fn tensor_rule_prediction(t1: u32, t2: u32, s1: u32, s2: u32) -> Result<Transition> {
    let kind = TensorCrystal::new(Sl2Crystal);
    let x = Tensor::new(vec![Sl2Elem { t: t1, s: s1 }, Sl2Elem { t: t2, s: s2 }]);
    let key = |y: Option<Tensor<Sl2Elem>>| y.map(|y| (y.factors[0].s, y.factors[1].s));
    Ok((key(kind.raise(&x, 0)?), key(kind.lower(&x, 0)?)))
}

/// Rank over `ℚ` of a matrix.
fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Defining relations on every basis vector of a shape.
pub fn relation_violations(shape: &[u32]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let q2 = QScalar::q_pow(2);
    let qm2 = QScalar::q_pow(-2);
    let denom = &QScalar::q_pow(1) - &QScalar::q_pow(-1);
    for idx in TensorVector::indices(shape) {
        let v = TensorVector::basis(shape, &idx)?;
        if v.act(Op::K(-1)).act(Op::K(1)) != v {
            bad.push(format!("K K^-1 != 1 on {idx:?}"));
        }
        if v.act(Op::K(-1)).act(Op::E(1)).act(Op::K(1)) != v.act(Op::E(1)).scale(&q2) {
            bad.push(format!("K E K^-1 != q^2 E on {idx:?}"));
        }
        if v.act(Op::K(-1)).act(Op::F(1)).act(Op::K(1)) != v.act(Op::F(1)).scale(&qm2) {
            bad.push(format!("K F K^-1 != q^-2 F on {idx:?}"));
        }
        let ef = v.act(Op::F(1)).act(Op::E(1));
        let fe = v.act(Op::E(1)).act(Op::F(1));
        let kk = v.act(Op::K(1)).try_sub(&v.act(Op::K(-1)))?.scale(&denom.inv()?);
        if ef.try_sub(&fe)? != kk {
            bad.push(format!("[E,F] != (K - K^-1)/(q - q^-1) on {idx:?}"));
        }
        for r in 2..=3u32 {
            let mut fr = v.clone();
            let mut er = v.clone();
            for _ in 0..r {
                fr = fr.act(Op::F(1));
                er = er.act(Op::E(1));
            }
            let fact = super::poly::qfact(r).inv()?;
            if v.act(Op::F(r)) != fr.scale(&fact) || v.act(Op::E(r)) != er.scale(&fact) {
                bad.push(format!("divided power of order {r} inconsistent on {idx:?}"));
            }
        }
    }
    Ok(bad)
}

/// All checks of the tensor lemma for `V(t_1) ⊗ V(t_2)`, plus the table.
pub fn verify_lemma(t1: u32, t2: u32) -> Result<(Report, Vec<LimitRow>)> {
    let shape = [t1, t2];
    let top = i64::from(t1 + t2);
    let mut report = Report::new();
    let sing = singular_vectors(t1, t2)?;

    let mut hw_bad = Vec::new();
    let mut kernel_bad = Vec::new();
    let mut leading_bad = Vec::new();
    for (r, u) in sing.iter().enumerate() {
        let r32 = r as u32;
        if !u.act(Op::E(1)).is_zero() {
            hw_bad.push(format!("E u_{r} != 0"));
        }
        if u.act(Op::K(1)) != u.scale(&QScalar::q_pow(top - 2 * r as i64)) {
            hw_bad.push(format!("K u_{r} has the wrong weight"));
        }
        if singular_vector_by_kernel(t1, t2, r32)? != *u {
            kernel_bad.push(format!("u_{r}"));
        }
        if !u.in_lattice() || reduce_mod_q(u)? != Some(vec![0, r32]) {
            leading_bad.push(format!("u_{r} is not congruent to v_1 ⊗ F^({r}) v_2"));
        }
    }
    report.push_violations("singular_highest_weight", &hw_bad);
    report.push_violations("closed_form_matches_kernel", &kernel_bad);
    report.push_violations("singular_leading_term", &leading_bad);

    let mut sum_bad = Vec::new();
    for k in 0..=(t1 + t2) {
        let basis: Vec<Vec<u32>> =
            TensorVector::indices(&shape).into_iter().filter(|idx| idx[0] + idx[1] == k).collect();
        let mut strings = Vec::new();
        for (r, u) in sing.iter().enumerate() {
            let r = r as u32;
            if r <= k && i64::from(k - r) <= top - 2 * i64::from(r) {
                strings.push(u.act(Op::F(k - r)));
            }
        }
        if strings.len() != basis.len() {
            sum_bad.push(format!(
                "weight {}: {} strings for {} basis vectors",
                top - 2 * i64::from(k),
                strings.len(),
                basis.len()
            ));
            continue;
        }
        if strings.iter().any(|s| !s.in_lattice()) {
            sum_bad.push(format!("weight {}: a string vector leaves the lattice", top - 2 * i64::from(k)));
            continue;
        }
        let at_zero: Vec<Vec<Q>> = strings
            .iter()
            .map(|s| basis.iter().map(|idx| s.coord(idx).eval_at_zero()).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        if rank(at_zero) != basis.len() {
            sum_bad.push(format!("weight {}: transition matrix singular at q = 0", top - 2 * i64::from(k)));
        }
    }
    report.push_violations("lattice_direct_sum", &sum_bad);

    let mut pres_bad = Vec::new();
    let mut congr_bad = Vec::new();
    for idx in TensorVector::indices(&shape) {
        let v = TensorVector::basis(&shape, &idx)?;
        let coords = string_coordinates(&v, &sing)?;
        let units: Vec<&(u32, u32, QScalar)> = coords.iter().filter(|(_, _, c)| c.valuation() == Some(0)).collect();
        let ok = coords.iter().all(|(_, _, c)| c.in_local_ring())
            && units.len() == 1
            && units[0].2.eval_at_zero()?.is_one()
            && units[0].0 + units[0].1 == idx[0] + idx[1];
        if !ok {
            congr_bad.push(format!("{idx:?}"));
        }
        for (name, w) in [("e", v.kashiwara_e()?), ("f", v.kashiwara_f()?)] {
            let in_strings = string_coordinates(&w, &sing)?.iter().all(|(_, _, c)| c.in_local_ring());
            if !w.in_lattice() || !in_strings {
                pres_bad.push(format!("{name} of {idx:?}"));
            }
        }
    }
    report.push_violations("basis_congruent_to_strings", &congr_bad);
    report.push_violations("lattice_preserved", &pres_bad);

    let table = crystal_limit_table(t1, t2)?;
    let mut case_bad = Vec::new();
    let mut rule_bad = Vec::new();
    for row in &table {
        if case_table_prediction(t1, t2, row.s1, row.s2) != (row.e, row.f) {
            case_bad.push(format!("({}, {})", row.s1, row.s2));
        }
        if tensor_rule_prediction(t1, t2, row.s1, row.s2)? != (row.e, row.f) {
            rule_bad.push(format!("({}, {})", row.s1, row.s2));
        }
    }
    report.push_violations("limit_table_matches_cases", &case_bad);
    report.push_violations("limit_table_matches_tensor_rule", &rule_bad);
    Ok((report, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u1_for_shape_1_1() {
        let u = singular_vector(1, 1, 1).unwrap();
        let expect = TensorVector::basis(&[1, 1], &[0, 1])
            .unwrap()
            .try_sub(&TensorVector::basis(&[1, 1], &[1, 0]).unwrap().scale(&QScalar::q_pow(1)))
            .unwrap();
        assert_eq!(u, expect);
    }

    #[test]
    fn c11_matches_the_rank_one_formula() {
        for t2 in 1..5 {
            let expect = -&(&QScalar::q_pow(i64::from(t2)) * &super::super::poly::qint(i64::from(t2)));
            assert_eq!(closed_form_coeff(1, t2, 1, 1).unwrap(), expect);
        }
    }

    #[test]
    fn limit_table_1_1() {
        let t = crystal_limit_table(1, 1).unwrap();
        let row = |s1, s2| t.iter().find(|r| r.s1 == s1 && r.s2 == s2).unwrap().clone();
        assert_eq!(row(0, 0).f, Some((1, 0)));
        assert_eq!(row(0, 0).e, None);
        assert_eq!(row(1, 0).f, Some((1, 1)));
        assert_eq!(row(0, 1).f, None);
    }

    #[test]
    fn kashiwara_examples() {
        let hw = TensorVector::basis(&[1, 1], &[0, 0]).unwrap();
        assert!(hw.kashiwara_e().unwrap().is_zero());
        assert_eq!(reduce_mod_q(&hw.kashiwara_f().unwrap()).unwrap(), Some(vec![1, 0]));
        let v = TensorVector::basis(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(reduce_mod_q(&v.kashiwara_f().unwrap()).unwrap(), None);
        let w = TensorVector::basis(&[1, 1], &[1, 0]).unwrap();
        let down = w.kashiwara_f().unwrap();
        assert_eq!(reduce_mod_q(&down).unwrap(), Some(vec![1, 1]));
        assert_eq!(reduce_mod_q(&down.kashiwara_e().unwrap()).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn lemma_holds_for_small_shapes() {
        for (t1, t2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let (report, _) = verify_lemma(t1, t2).unwrap();
            assert!(report.all_pass(), "({t1},{t2}): {:?}", report.failures().collect::<Vec<_>>());
        }
    }
}
