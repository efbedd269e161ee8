use crate::algebra::{satisfies, Fe, Field, FormKind, Mat};
use crate::error::{Error, Result};

/// `U P + P conj(U)^F + U P conj(U)^F`. It vanishes exactly when
/// `X_{1+U, P'}` commutes with `X_{1, P}`.
pub fn centralizer_residual(u: &Mat, p: &Mat, f: &Field) -> Result<Mat> {
    if u.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: p.dim(),
        });
    }
    if !u.is_strictly_lower() {
        return Err(Error::Shape("U must be strictly lower triangular".into()));
    }
    if !satisfies(p, FormKind::ConjSkewPersymmetric, f)? {
        return Err(Error::Shape("P must be conjugate-skew-persymmetric".into()));
    }
    let ubar = u.conj(f).flip_transpose();
    let up = u.mul(p, f);
    Ok(up.add(&p.mul(&ubar, f), f).add(&up.mul(&ubar, f), f))
}

pub fn centralizer_condition(u: &Mat, p: &Mat, f: &Field) -> Result<bool> {
    Ok(centralizer_residual(u, p, f)?.is_zero())
}

/// The `m x m` matrix with `+1` at `(s, 1)` and `-1` at `(m, m+1-s)`, indices
/// 1-based. It is conjugate-skew-persymmetric and isolates column `s` of `U`
/// in the first column of the residual.
pub fn probe_matrix(m: usize, s: usize, f: &Field) -> Result<Mat> {
    if s == 0 || s > m {
        return Err(Error::InvalidParams(format!("probe column {s} outside 1..={m}")));
    }
    let mut p = Mat::zeros(m);
    p.set(s - 1, 0, Fe::ONE);
    let (r, c) = (m - 1, m - s);
    p.set(r, c, f.sub(p.get(r, c), Fe::ONE));
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{comm_formula, SylowElem, UnitaryParams, UnitarySylow};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_strict_lower(m: usize, f: &Field, rng: &mut ChaCha8Rng) -> Mat {
        let mut u = Mat::zeros(m);
        for a in 0..m {
            for b in 0..a {
                u.set(a, b, Fe(rng.random_range(0..f.size()) as u16));
            }
        }
        u
    }

    #[test]
    fn zero_u_always_centralizes() {
        let f = Field::new(5, 1).unwrap();
        let s = UnitarySylow::new(UnitaryParams::new(5, 5, 4).unwrap(), 1 << 24).unwrap();
        for i in 0..s.d_trivial_count() {
            let p = s.decode(i).p;
            assert!(centralizer_condition(&Mat::zeros(2), &p, &f).unwrap());
        }
    }

    #[test]
    fn probe_isolates_column() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for m in 2..=4 {
            for s in 1..=m {
                let p = probe_matrix(m, s, &f).unwrap();
                assert!(satisfies(&p, FormKind::ConjSkewPersymmetric, &f).unwrap());
                for _ in 0..50 {
                    let u = random_strict_lower(m, &f, &mut rng);
                    let e = centralizer_residual(&u, &p, &f).unwrap();
                    for r in 0..m - 1 {
                        assert_eq!(e.get(r, 0), u.get(r, s - 1), "m={m} s={s} r={r}");
                    }
                    // The last row carries U_ms - conj(U_ms) instead.
                    let ums = if s == m { Fe::ZERO } else { u.get(m - 1, s - 1) };
                    assert_eq!(e.get(m - 1, 0), f.sub(ums, f.conj(ums)));
                }
            }
        }
    }

    #[test]
    fn condition_matches_commutator() {
        let s = UnitarySylow::new(UnitaryParams::new(5, 5, 4).unwrap(), 1 << 24).unwrap();
        let f = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = s.d_trivial_count();
        let total = crate::group::GroupRepr::order(&s) as u64;
        let mut centralizing = 0;
        for i in 0..1000 {
            let x = s.decode(rng.random_range(0..a));
            // Half the samples use D = 1 so that both outcomes occur.
            let y = if i % 2 == 0 {
                s.decode(rng.random_range(0..a))
            } else {
                s.decode(rng.random_range(0..total))
            };
            let u = y.d.sub(&Mat::identity(2), f);
            let cond = centralizer_condition(&u, &x.p, f).unwrap();
            let c = comm_formula(&s, &x, &y).unwrap();
            assert_eq!(cond, c == SylowElem::identity(s.params()));
            centralizing += cond as u32;
        }
        assert!(centralizing >= 500);
    }

    #[test]
    fn shape_violations() {
        let f = Field::new(5, 1).unwrap();
        let mut u = Mat::zeros(2);
        u.set(0, 0, Fe::ONE);
        assert!(centralizer_condition(&u, &Mat::zeros(2), &f).is_err());
        let mut p = Mat::zeros(2);
        p.set(0, 0, Fe::ONE);
        assert!(centralizer_condition(&Mat::zeros(2), &p, &f).is_err());
        assert!(probe_matrix(2, 3, &f).is_err());
    }
}
