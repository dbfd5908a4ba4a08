//! Exact Fincke–Pohst enumeration of lattice points in a positive-definite ellipsoid.

use num_traits::{Signed, Zero};

use crate::rational::{q, to_f64, Q};

/// Quadratic form Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)², computed exactly.
struct Completed {
    diag: Vec<Q>,
    mu: Vec<Vec<Q>>,
}

fn complete_squares(a: &[Vec<Q>]) -> Option<Completed> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.to_vec();
    for i in 0..n {
        if !m[i][i].is_positive() {
            return None;
        }
        for j in (i + 1)..n {
            let v = &m[i][j] / &m[i][i];
            m[j][i] = m[i][j].clone();
            m[i][j] = v;
        }
        for k in (i + 1)..n {
            for l in k..n {
                let v = &m[k][i] * &m[i][l];
                m[k][l] -= v;
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    let mu = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j > i { m[i][j].clone() } else { Q::zero() })
                .collect()
        })
        .collect();
    Some(Completed { diag, mu })
}

fn form(a: &[Vec<Q>], v: &[i64]) -> Q {
    let mut s = Q::zero();
    for (i, row) in a.iter().enumerate() {
        if v[i] == 0 {
            continue;
        }
        let mut r = Q::zero();
        for (j, x) in row.iter().enumerate() {
            if v[j] != 0 {
                r += x * q(v[j]);
            }
        }
        s += r * q(v[i]);
    }
    s
}

/// All integer vectors v with vᵀ·A·v ≤ bound, for positive-definite rational A.
/// Returns `None` if A is not positive definite.
///
/// Positive definiteness is decided exactly. The tree search runs in f64 with
/// slack on every window, so it proposes a superset; each proposal is then
/// accepted or rejected by evaluating vᵀ·A·v exactly.
pub fn short_vectors(a: &[Vec<Q>], bound: &Q) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let comp = complete_squares(a)?;
    if n == 0 {
        return Some(vec![Vec::new()]);
    }
    let diag: Vec<f64> = comp.diag.iter().map(to_f64).collect();
    let mu: Vec<Vec<f64>> = comp
        .mu
        .iter()
        .map(|r| r.iter().map(to_f64).collect())
        .collect();
    let b = to_f64(bound);
    if !b.is_finite()
        || diag
            .iter()
            .chain(mu.iter().flatten())
            .any(|x| !x.is_finite())
    {
        return None;
    }
    let slack = 1e-7 * (1.0 + b.abs());
    struct Ctx<'a> {
        diag: Vec<f64>,
        mu: Vec<Vec<f64>>,
        slack: f64,
        a: &'a [Vec<Q>],
        af: Vec<Vec<f64>>,
        bound: &'a Q,
        b: f64,
    }
    // f64 value decides unless it lies within a rounding margin of the bound
    fn accept(cx: &Ctx, x: &[i64]) -> bool {
        let (mut v, mut mag) = (0.0f64, 0.0f64);
        for (i, row) in cx.af.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                let t = a * (x[i] * x[j]) as f64;
                v += t;
                mag += t.abs();
            }
        }
        let err = 1e-9 * (1.0 + mag);
        if v + err < cx.b {
            true
        } else if v - err > cx.b {
            false
        } else {
            form(cx.a, x) <= *cx.bound
        }
    }
    fn rec(i: usize, rem: f64, cx: &Ctx, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = x.len();
        let c: f64 = -((i + 1)..n).map(|j| cx.mu[i][j] * x[j] as f64).sum::<f64>();
        let t = rem + cx.slack;
        if t < 0.0 {
            return;
        }
        let r = (t / cx.diag[i]).sqrt();
        let pad = 1e-7 * (1.0 + c.abs() + r);
        let lo = (c - r - pad).ceil() as i64;
        let hi = (c + r + pad).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let u = v as f64 - c;
            let next = rem - cx.diag[i] * u * u;
            if i == 0 {
                if accept(cx, x) {
                    out.push(x.clone());
                }
            } else {
                rec(i - 1, next, cx, x, out);
            }
        }
        x[i] = 0;
    }
    let cx = Ctx {
        diag,
        mu,
        slack,
        a,
        af: a.iter().map(|r| r.iter().map(to_f64).collect()).collect(),
        bound,
        b,
    };
    if bound.is_negative() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    rec(n - 1, b, &cx, &mut x, &mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    fn brute(a: &[Vec<Q>], bound: &Q, r: i64) -> Vec<Vec<i64>> {
        let n = a.len();
        let mut out = Vec::new();
        let mut v = vec![-r; n];
        loop {
            let mut s = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    s += &a[i][j] * q(v[i] * v[j]);
                }
            }
            if &s <= bound {
                out.push(v.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                v[k] += 1;
                if v[k] > r {
                    v[k] = -r;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let a = qm(&[&[3, 1, 0], &[1, 2, -1], &[0, -1, 4]]);
        for b in [0, 1, 5, 12, 30] {
            let mut got = short_vectors(&a, &q(b)).unwrap();
            let mut want = brute(&a, &q(b), 8);
            got.sort();
            want.sort();
            assert_eq!(got, want, "bound {b}");
        }
    }

    #[test]
    fn rational_form() {
        let a = vec![
            vec![crate::rational::qr(5, 2), crate::rational::qr(-1, 3)],
            vec![crate::rational::qr(-1, 3), crate::rational::qr(7, 5)],
        ];
        let mut got = short_vectors(&a, &q(9)).unwrap();
        let mut want = brute(&a, &q(9), 10);
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn indefinite_rejected() {
        assert!(short_vectors(&qm(&[&[1, 0], &[0, -1]]), &q(1)).is_none());
    }
}
