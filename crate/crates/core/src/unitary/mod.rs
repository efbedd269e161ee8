//! Sylow p-subgroups of `U_n(F_q)` in defining characteristic.
//!
//! With `n = 2m` every element is `X_{D,P} = [[(conj(D)^F)^{-1}, 0], [DP, D]]`
//! for lower unitriangular `D` and conjugate-skew-persymmetric `P`. With
//! `n = 2m + 1` a middle row `alpha` appears:
//!
//! ```text
//! X_{D,P,alpha} = [ (conj(D)^F)^{-1}   0                      0 ]
//!                 [ alpha              1                      0 ]
//!                 [ DP                 -D Q conj(alpha)^T     D ]
//! ```
//!
//! and `P + conj(P)^F = -Q conj(alpha)^T alpha`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{alpha_twist, is_unitary, satisfies, Fe, Field, FormKind, Mat};
use crate::error::{Error, Result};
use crate::group::{Group, GroupRepr, DEFAULT_BUDGET};

mod centralizer;
mod formulas;
mod subgroups;

pub use centralizer::{centralizer_condition, centralizer_residual, probe_matrix};
pub use formulas::{comm_formula, inverse_formula, mul_formula, sylow_mul};
pub use subgroups::SubgroupTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitaryParams {
    p: u32,
    k: u32,
    q: u32,
    n: usize,
    m: usize,
    parity: Parity,
}

impl UnitaryParams {
    /// Requires `p >= 5` prime, `q` a power of `p`, and `n >= 2`.
    pub fn new(p: u32, q: u32, n: usize) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::InvalidParams(format!(
                "Sylow constructions need p >= 5, got p = {p}"
            )));
        }
        let mut k = 0;
        let mut pk: u64 = 1;
        while pk < q as u64 {
            pk *= p as u64;
            k += 1;
        }
        if k == 0 || pk != q as u64 {
            return Err(Error::InvalidParams(format!("q = {q} is not a power of p = {p}")));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("matrix size n must be at least 2, got {n}")));
        }
        let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(UnitaryParams {
            p,
            k,
            q,
            n,
            m: n / 2,
            parity,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `q^{n(n-1)/2}`.
    pub fn sylow_order(&self) -> u128 {
        (self.q as u128).saturating_pow((self.n * (self.n - 1) / 2) as u32)
    }

    pub fn label(&self) -> String {
        format!("Sylow(p={}, q={}, n={})", self.p, self.q, self.n)
    }
}

/// The `(D, P)` or `(D, P, alpha)` coordinates of a Sylow element. `alpha` is
/// empty for even `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SylowElem {
    pub d: Mat,
    pub p: Mat,
    pub alpha: Vec<Fe>,
}

impl SylowElem {
    pub fn identity(params: &UnitaryParams) -> Self {
        let m = params.m;
        SylowElem {
            d: Mat::identity(m),
            p: Mat::zeros(m),
            alpha: match params.parity {
                Parity::Even => Vec::new(),
                Parity::Odd => vec![Fe::ZERO; m],
            },
        }
    }

    pub fn even(d: Mat, p: Mat) -> Self {
        SylowElem {
            d,
            p,
            alpha: Vec::new(),
        }
    }

    pub fn odd(d: Mat, p: Mat, alpha: Vec<Fe>) -> Self {
        SylowElem { d, p, alpha }
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.iter().all(|a| a.is_zero())
    }
}

/// One coordinate of the canonical index.
#[derive(Clone, Copy, Debug)]
enum Digit {
    D(usize, usize),
    Alpha(usize),
    Free(usize, usize),
    SkewDiag(usize),
}

/// The Sylow subgroup as an enumerable group.
///
/// Elements are numbered by a mixed-radix index whose digits, most significant
/// first, are the strictly lower entries of `D`, the entries of `alpha`, the
/// entries of `P` strictly below the skew-diagonal, and finally one base-`q`
/// digit per skew-diagonal entry of `P` choosing among the `q` solutions of
/// `x + conj(x) = c`. The identity is index 0, and the elements with `D = 1`
/// form an initial segment.
pub struct UnitarySylow {
    field: Arc<Field>,
    params: UnitaryParams,
    digits: Vec<(Digit, u64)>,
    weights: Vec<u64>,
    order: u64,
    generators: Vec<usize>,
}

impl fmt::Debug for UnitarySylow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitarySylow")
            .field("params", &self.params)
            .finish()
    }
}

impl UnitarySylow {
    /// Fails when `q^{n(n-1)/2}` exceeds `budget`.
    pub fn new(params: UnitaryParams, budget: usize) -> Result<Self> {
        let field = Arc::new(Field::new(params.p, params.k)?);
        Self::with_field(field, params, budget)
    }

    pub fn with_field(field: Arc<Field>, params: UnitaryParams, budget: usize) -> Result<Self> {
        if field.p() != params.p || field.k() != params.k {
            return Err(Error::InvalidParams(format!(
                "field F_{}^{} does not match {}",
                field.p(),
                2 * field.k(),
                params.label()
            )));
        }
        let order = params.sylow_order();
        if order > budget as u128 {
            return Err(Error::budget(params.label(), order, budget));
        }
        let m = params.m;
        let q2 = field.size() as u64;
        let q = field.q() as u64;
        let mut digits = Vec::new();
        for a in 0..m {
            for b in 0..a {
                digits.push((Digit::D(a, b), q2));
            }
        }
        if params.parity == Parity::Odd {
            for a in 0..m {
                digits.push((Digit::Alpha(a), q2));
            }
        }
        for a in 0..m {
            for b in 0..m {
                if a + b > m - 1 {
                    digits.push((Digit::Free(a, b), q2));
                }
            }
        }
        for a in 0..m {
            digits.push((Digit::SkewDiag(a), q));
        }
        let mut weights = vec![0u64; digits.len()];
        let mut w = 1u64;
        for i in (0..digits.len()).rev() {
            weights[i] = w;
            w *= digits[i].1;
        }
        debug_assert_eq!(w as u128, order);
        let mut repr = UnitarySylow {
            field,
            params,
            digits,
            weights,
            order: w,
            generators: Vec::new(),
        };
        repr.generators = repr.canonical_generators();
        Ok(repr)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn params(&self) -> &UnitaryParams {
        &self.params
    }

    /// Number of elements with `D = 1`.
    pub fn d_trivial_count(&self) -> u64 {
        self.digits
            .iter()
            .filter(|(d, _)| !matches!(d, Digit::D(..)))
            .map(|&(_, r)| r)
            .product()
    }

    /// Number of elements with `D = 1` and `alpha = 0`.
    pub fn alpha_free_count(&self) -> u64 {
        self.digits
            .iter()
            .filter(|(d, _)| matches!(d, Digit::Free(..) | Digit::SkewDiag(_)))
            .map(|&(_, r)| r)
            .product()
    }

    /// Weight of the least significant `D` digit; `D`-only elements are the
    /// multiples of it below the order.
    pub fn d_weight(&self) -> u64 {
        self.d_trivial_count()
    }

    /// The coordinates of element number `index`.
    pub fn decode(&self, index: u64) -> SylowElem {
        assert!(index < self.order, "index {index} out of range");
        let f = &*self.field;
        let mut e = SylowElem::identity(&self.params);
        let mut skew_digits = vec![0usize; self.params.m];
        let mut rest = index;
        for (i, &(digit, radix)) in self.digits.iter().enumerate() {
            let v = rest / self.weights[i];
            rest %= self.weights[i];
            debug_assert!(v < radix);
            match digit {
                Digit::D(a, b) => e.d.set(a, b, Fe(v as u16)),
                Digit::Alpha(a) => e.alpha[a] = Fe(v as u16),
                Digit::Free(a, b) => e.p.set(a, b, Fe(v as u16)),
                Digit::SkewDiag(a) => skew_digits[a] = v as usize,
            }
        }
        self.complete_p(&mut e.p, &e.alpha, |a| f.trace_kernel()[skew_digits[a]]);
        e
    }

    /// Fills the entries of `p` on and above the skew-diagonal from the free
    /// entries below it, given the kernel offset for each skew-diagonal entry.
    fn complete_p(&self, p: &mut Mat, alpha: &[Fe], offset: impl Fn(usize) -> Fe) {
        let f = &*self.field;
        let m = self.params.m;
        let twist = if alpha.is_empty() || alpha.iter().all(|a| a.is_zero()) {
            None
        } else {
            Some(alpha_twist(alpha, f))
        };
        let tw = |a: usize, b: usize| twist.as_ref().map_or(Fe::ZERO, |t| t.get(a, b));
        for a in 0..m {
            for b in 0..m {
                if a + b > m - 1 {
                    // Entry (a, b) determines its mirror (m-1-b, m-1-a).
                    let v = f.conj(f.sub(tw(a, b), p.get(a, b)));
                    p.set(m - 1 - b, m - 1 - a, v);
                }
            }
        }
        for a in 0..m {
            let c = tw(a, m - 1 - a);
            let base = f.trace_lift(c).expect("skew-diagonal constraint lies in F_q");
            p.set(a, m - 1 - a, f.add(base, offset(a)));
        }
    }

    /// Canonical index of `e`, validating every coordinate.
    pub fn encode(&self, e: &SylowElem) -> Result<u64> {
        self.check_elem(e)?;
        Ok(self.encode_unchecked(e))
    }

    fn encode_unchecked(&self, e: &SylowElem) -> u64 {
        let f = &*self.field;
        let m = self.params.m;
        let mut index = 0u64;
        for (i, &(digit, _)) in self.digits.iter().enumerate() {
            let v = match digit {
                Digit::D(a, b) => e.d.get(a, b).index() as u64,
                Digit::Alpha(a) => e.alpha[a].index() as u64,
                Digit::Free(a, b) => e.p.get(a, b).index() as u64,
                Digit::SkewDiag(a) => {
                    let c = if e.alpha.is_empty() {
                        Fe::ZERO
                    } else {
                        let na = e.alpha[m - 1 - a];
                        f.neg(f.mul(f.conj(na), na))
                    };
                    let base = f.trace_lift(c).expect("norm lies in F_q");
                    let off = f.sub(e.p.get(a, m - 1 - a), base);
                    f.kernel_position(off).expect("skew-diagonal entry solves its constraint")
                        as u64
                }
            };
            index += v * self.weights[i];
        }
        index
    }

    fn check_elem(&self, e: &SylowElem) -> Result<()> {
        let f = &*self.field;
        let m = self.params.m;
        if e.d.dim() != m || e.p.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: if e.d.dim() != m { e.d.dim() } else { e.p.dim() },
            });
        }
        let alpha_len = match self.params.parity {
            Parity::Even => 0,
            Parity::Odd => m,
        };
        if e.alpha.len() != alpha_len {
            return Err(Error::DimensionMismatch {
                expected: alpha_len,
                found: e.alpha.len(),
            });
        }
        if !e.d.is_lower_unitriangular() {
            return Err(Error::Shape("D is not lower unitriangular".into()));
        }
        let ok = match self.params.parity {
            Parity::Even => satisfies(&e.p, FormKind::ConjSkewPersymmetric, f)?,
            Parity::Odd => satisfies(&e.p, FormKind::AlphaConjSkewPersymmetric(&e.alpha), f)?,
        };
        if !ok {
            return Err(Error::Shape(match self.params.parity {
                Parity::Even => "P is not conjugate-skew-persymmetric".into(),
                Parity::Odd => "P is not alpha-conjugate-skew-persymmetric".into(),
            }));
        }
        Ok(())
    }

    /// The `n x n` matrix of `e`.
    pub fn embed(&self, e: &SylowElem) -> Mat {
        let f = &*self.field;
        let m = self.params.m;
        let n = self.params.n;
        let mut x = Mat::zeros(n);
        let b = e
            .d
            .conj(f)
            .flip_transpose()
            .inverse(f)
            .expect("unitriangular matrices are invertible");
        x.set_block(0, 0, &b);
        let bottom = n - m;
        x.set_block(bottom, 0, &e.d.mul(&e.p, f));
        x.set_block(bottom, bottom, &e.d);
        if self.params.parity == Parity::Odd {
            x.set(m, m, Fe::ONE);
            for (c, &a) in e.alpha.iter().enumerate() {
                x.set(m, c, a);
            }
            // beta = -D Q conj(alpha)^T
            let qa: Vec<Fe> = (0..m).map(|r| f.conj(e.alpha[m - 1 - r])).collect();
            let beta = e.d.mul_vec(&qa, f);
            for (r, &v) in beta.iter().enumerate() {
                x.set(m + 1 + r, m, f.neg(v));
            }
        }
        x
    }

    /// Recovers the coordinates of a lower unitriangular unitary matrix.
    pub fn decompose(&self, x: &Mat) -> Result<SylowElem> {
        let n = self.params.n;
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.dim(),
            });
        }
        if !x.is_lower_unitriangular() {
            return Err(Error::NotMember("matrix is not lower unitriangular".into()));
        }
        if !is_unitary(x, &self.field) {
            return Err(Error::NotMember("matrix is not unitary".into()));
        }
        let e = self.decompose_unchecked(x);
        self.check_elem(&e)?;
        Ok(e)
    }

    fn decompose_unchecked(&self, x: &Mat) -> SylowElem {
        let f = &*self.field;
        let m = self.params.m;
        let n = self.params.n;
        let bottom = n - m;
        let d = x.block(bottom, bottom, m);
        let c = x.block(bottom, 0, m);
        let p = d.inverse_unitriangular(f).mul(&c, f);
        let alpha = match self.params.parity {
            Parity::Even => Vec::new(),
            Parity::Odd => (0..m).map(|col| x.get(m, col)).collect(),
        };
        SylowElem { d, p, alpha }
    }

    /// Generators: the root elements `X_{1 + t E_ab, 0}` and, for the normal
    /// part, `X_{1, P}` for `P` over an additive basis of the solution space.
    fn canonical_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let basis = self.field.additive_basis();
        let m = self.params.m;
        for a in 0..m {
            for b in 0..a {
                for &t in &basis {
                    let mut e = SylowElem::identity(&self.params);
                    e.d.set(a, b, t);
                    gens.push(self.encode_unchecked(&e) as usize);
                }
            }
        }
        gens.extend(self.d_trivial_generators().into_iter().map(|g| g as usize));
        gens
    }

    /// Generators of the elements with `D = 1`: one per unit step of each
    /// non-`D` digit, in digit order.
    pub(crate) fn d_trivial_generators(&self) -> Vec<u64> {
        let f = &*self.field;
        let kernel_basis: Vec<u64> = f
            .trace_kernel_basis()
            .into_iter()
            .map(|y| f.kernel_position(y).expect("basis lies in the kernel") as u64)
            .collect();
        let mut gens = Vec::new();
        for (i, &(digit, radix)) in self.digits.iter().enumerate() {
            match digit {
                Digit::D(..) => {}
                Digit::SkewDiag(_) => {
                    gens.extend(kernel_basis.iter().map(|&v| v * self.weights[i]));
                }
                _ => {
                    // Field indices are base-p coefficient vectors, so the
                    // F_p-basis sits at the powers of p.
                    let mut v = 1u64;
                    while v < radix {
                        gens.push(v * self.weights[i]);
                        v *= self.params.p as u64;
                    }
                }
            }
        }
        gens
    }

    /// Index of the element `X_{D, 0}` (or `X_{D, 0, 0}`).
    pub fn d_only_index(&self, d: &Mat) -> u64 {
        let mut e = SylowElem::identity(&self.params);
        e.d = d.clone();
        self.encode_unchecked(&e)
    }

    pub(crate) fn d_digit_positions(&self) -> Vec<(usize, usize, u64)> {
        self.digits
            .iter()
            .zip(&self.weights)
            .filter_map(|(&(d, _), &w)| match d {
                Digit::D(a, b) => Some((a, b, w)),
                _ => None,
            })
            .collect()
    }
}

impl GroupRepr for UnitarySylow {
    type Elem = Mat;

    fn order(&self) -> usize {
        self.order as usize
    }

    fn prime(&self) -> u32 {
        self.params.p
    }

    fn element(&self, index: usize) -> Mat {
        self.embed(&self.decode(index as u64))
    }

    fn index_of(&self, elem: &Mat) -> Option<usize> {
        let e = self.decompose(elem).ok()?;
        Some(self.encode_unchecked(&e) as usize)
    }

    fn index_of_member(&self, elem: &Mat) -> usize {
        self.encode_unchecked(&self.decompose_unchecked(elem)) as usize
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(b, &self.field)
    }

    fn inv(&self, a: &Mat) -> Mat {
        a.inverse_unitriangular(&self.field)
    }

    fn identity(&self) -> Mat {
        Mat::identity(self.params.n)
    }

    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }

    fn label(&self) -> String {
        self.params.label()
    }
}

/// Builds the Sylow subgroup as an enumerated group.
pub fn enumerate_sylow(params: UnitaryParams, budget: usize) -> Result<Group<UnitarySylow>> {
    Group::new(UnitarySylow::new(params, budget)?, budget)
}

/// [`enumerate_sylow`] with the default budget.
pub fn sylow(p: u32, q: u32, n: usize) -> Result<Group<UnitarySylow>> {
    enumerate_sylow(UnitaryParams::new(p, q, n)?, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupRepr;

    #[test]
    fn params_validation() {
        assert!(UnitaryParams::new(3, 3, 2).is_err());
        assert!(UnitaryParams::new(4, 4, 2).is_err());
        assert!(UnitaryParams::new(5, 7, 2).is_err());
        assert!(UnitaryParams::new(5, 5, 1).is_err());
        let p = UnitaryParams::new(5, 25, 3).unwrap();
        assert_eq!((p.k(), p.m(), p.parity()), (2, 1, Parity::Odd));
        assert_eq!(p.sylow_order(), 15625);
    }

    #[test]
    fn identity_is_index_zero() {
        for n in 2..=5 {
            let s = UnitarySylow::new(UnitaryParams::new(5, 5, n).unwrap(), 1 << 24).unwrap();
            let id = SylowElem::identity(s.params());
            assert_eq!(s.encode(&id).unwrap(), 0);
            assert!(s.embed(&id).is_identity());
            assert_eq!(s.element(0), s.identity());
        }
    }

    #[test]
    fn round_trip_all_elements_small() {
        for (q, n) in [(5, 2), (5, 3), (25, 2), (5, 4)] {
            let s = UnitarySylow::new(UnitaryParams::new(5, q, n).unwrap(), 1 << 24).unwrap();
            let f = s.field();
            for i in 0..s.order() as u64 {
                let e = s.decode(i);
                let x = s.embed(&e);
                assert!(x.is_lower_unitriangular());
                assert!(is_unitary(&x, f), "q={q} n={n} i={i}");
                assert_eq!(s.decompose(&x).unwrap(), e);
                assert_eq!(s.encode(&e).unwrap(), i);
            }
        }
    }

    #[test]
    fn decompose_rejects_non_members() {
        let s = UnitarySylow::new(UnitaryParams::new(5, 5, 4).unwrap(), 1 << 24).unwrap();
        let mut x = Mat::identity(4);
        x.set(1, 0, Fe(1));
        assert!(matches!(s.decompose(&x), Err(Error::NotMember(_))));
        x.set(0, 1, Fe(1));
        assert!(s.decompose(&x).is_err());
        assert!(s.decompose(&Mat::identity(3)).is_err());
    }

    #[test]
    fn encode_rejects_bad_coordinates() {
        let params = UnitaryParams::new(5, 5, 4).unwrap();
        let s = UnitarySylow::new(params, 1 << 24).unwrap();
        let mut e = SylowElem::identity(&params);
        e.p.set(1, 1, Fe(1));
        assert!(matches!(s.encode(&e), Err(Error::Shape(_))));
    }

    #[test]
    fn budget_is_reported() {
        let params = UnitaryParams::new(5, 5, 6).unwrap();
        match UnitarySylow::new(params, 1 << 24) {
            Err(Error::BudgetExceeded { required, .. }) => assert_eq!(required, 5u128.pow(15)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
