//! Resultants, discriminants, gcds and square-free parts of multivariate
//! polynomials. These are the building blocks of every projection step.

use super::poly::{MultiPoly, Variable};
use super::ArithError;

/// Resultant with respect to `v` via the subresultant remainder sequence.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Variable) -> Result<MultiPoly, ArithError> {
    if p.order() != q.order() {
        return Err(ArithError::OrderMismatch);
    }
    if p.degree(v) == 0 || q.degree(v) == 0 {
        return Err(ArithError::NotPositiveDegree);
    }
    Ok(subresultant(p, q, v))
}

/// Subresultant PRS resultant; tolerates degree-0 inputs (a constant `c`
/// against a degree-`d` polynomial gives `c^d`).
pub(crate) fn subresultant(p: &MultiPoly, q: &MultiPoly, v: Variable) -> MultiPoly {
    let order = p.order().clone();
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero(&order);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut negate = false;
    if a.degree(v) < b.degree(v) {
        if a.degree(v) % 2 == 1 && b.degree(v) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree(v) == 0 {
        let r = b.pow(a.degree(v));
        return if negate { -&r } else { r };
    }
    let mut g = MultiPoly::one(&order);
    let mut h = MultiPoly::one(&order);
    loop {
        let da = a.degree(v);
        let db = b.degree(v);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b, v);
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.leading_coeff_in(v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
        if b.is_zero() {
            return b;
        }
        if b.degree(v) == 0 {
            break;
        }
    }
    let da = a.degree(v);
    let lb = b.leading_coeff_in(v);
    let r = if da == 0 { h } else { lb.pow(da).div_exact(&h.pow(da - 1)).expect("subresultant division is exact") };
    if negate {
        -&r
    } else {
        r
    }
}

/// Determinant of the Sylvester matrix, by fraction-free elimination.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, v: Variable) -> Result<MultiPoly, ArithError> {
    if p.order() != q.order() {
        return Err(ArithError::OrderMismatch);
    }
    let m = p.degree(v) as usize;
    let n = q.degree(v) as usize;
    if m == 0 || n == 0 {
        return Err(ArithError::NotPositiveDegree);
    }
    let order = p.order().clone();
    let pc = p.coeffs(v);
    let qc = q.coeffs(v);
    let size = m + n;
    let mut mat = vec![vec![MultiPoly::zero(&order); size]; size];
    for (i, row) in mat.iter_mut().enumerate().take(n) {
        for (j, c) in pc.iter().enumerate() {
            row[i + j] = c.clone();
        }
    }
    for (i, row) in mat.iter_mut().skip(n).enumerate() {
        for (j, c) in qc.iter().enumerate() {
            row[i + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn bareiss_determinant(mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = mat.len();
    let order = mat[0][0].order().clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(&order);
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(i, k);
                    sign = !sign;
                }
                None => return MultiPoly::zero(&order),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// `(-1)^(d(d-1)/2) res(p, dp/dv) / lc(p)`.
pub fn discriminant(p: &MultiPoly, v: Variable) -> Result<MultiPoly, ArithError> {
    let d = p.degree(v);
    if d == 0 {
        return Err(ArithError::NotPositiveDegree);
    }
    if d == 1 {
        return Ok(MultiPoly::one(p.order()));
    }
    let r = subresultant(p, &p.derivative(v), v);
    let disc = r.div_exact(&p.leading_coeff_in(v)).expect("leading coefficient divides the resultant");
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -&disc } else { disc })
}

/// Gcd of the coefficients with respect to `v` (a polynomial free of `v`).
pub fn content(p: &MultiPoly, v: Variable) -> MultiPoly {
    let mut g = MultiPoly::zero(p.order());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

pub fn primitive_part(p: &MultiPoly, v: Variable) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides the polynomial")
}

/// Greatest common divisor, normalized to leading coefficient 1.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.order());
    }
    let vp = p.main_var().unwrap();
    let vq = q.main_var().unwrap();
    let v = vp.max(vq);
    if !p.involves(v) {
        return gcd(p, &content(q, v));
    }
    if !q.involves(v) {
        return gcd(&content(p, v), q);
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let c = gcd(&cp, &cq);
    let mut a = p.div_exact(&cp).unwrap();
    let mut b = q.div_exact(&cq).unwrap();
    if a.degree(v) < b.degree(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.prem(&b, v);
        if r.is_zero() {
            break;
        }
        if r.degree(v) == 0 {
            b = MultiPoly::one(p.order());
            break;
        }
        a = b;
        b = primitive_part(&r, v);
    }
    (&c * &primitive_part(&b, v)).monic()
}

/// `p / gcd(p, dp/dv)`: the repeated factors involving `v` removed.
pub fn square_free_part(p: &MultiPoly, v: Variable) -> Result<MultiPoly, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if !p.involves(v) {
        return Ok(p.clone());
    }
    let g = gcd(p, &p.derivative(v));
    Ok(p.div_exact(&g).expect("gcd divides the polynomial"))
}

/// Splits a set of polynomials into pairwise coprime, square-free factors
/// (with respect to their main variables). Constants are dropped and the
/// result is normalized and sorted.
pub fn square_free_basis(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for p in polys {
        let mut pending = vec![p.clone()];
        while let Some(q) = pending.pop() {
            if q.is_constant() {
                continue;
            }
            let v = q.main_var().unwrap();
            let c = content(&q, v);
            if !c.is_constant() {
                pending.push(c.clone());
                pending.push(q.div_exact(&c).unwrap());
                continue;
            }
            let q = square_free_part(&q, v).unwrap().normalized();
            let mut merged = false;
            for i in 0..basis.len() {
                let g = gcd(&basis[i], &q);
                if g.is_constant() {
                    continue;
                }
                let b = basis.remove(i);
                pending.push(g.clone());
                pending.push(b.div_exact(&g).unwrap());
                pending.push(q.div_exact(&g).unwrap());
                merged = true;
                break;
            }
            if !merged && !basis.contains(&q) {
                basis.push(q);
            }
        }
    }
    basis.sort();
    basis.dedup();
    basis
}

/// Coefficients with respect to `v`, highest first.
pub fn coeffs(p: &MultiPoly, v: Variable) -> Vec<MultiPoly> {
    p.coeffs(v)
}
