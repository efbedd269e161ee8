//! Table-driven arithmetic in `F_{q^2}` together with its subfield `F_q` and
//! the Frobenius conjugation `x -> x^q`.
//!
//! Elements are encoded by the integer `sum c_i p^i` of their coefficient
//! vector in `F_p[x]/(f)`. The encoding only depends on `(p, k, f)`, so it is
//! stable across runs and machines; `0` is the zero element and `1` the unit.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order `q^2`.
pub const MAX_FIELD_ORDER: usize = 1 << 16;

/// Fields up to this order get a full addition table; larger ones add through
/// Zech logarithms.
const ADD_TABLE_LIMIT: usize = 1024;

const NO_LOG: u32 = u32::MAX;

/// An element of `F_{q^2}`, stored as its canonical index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `F_{q^2}` with `q = p^k`, built as `F_p[x]/(f)` for a monic irreducible `f`
/// of degree `2k`.
pub struct Field {
    p: u32,
    k: u32,
    q: usize,
    size: usize,
    modulus: Vec<u32>,
    generator: Fe,
    // exp has length 2 * (size - 1) so that log sums never need a reduction.
    exp: Vec<Fe>,
    log: Vec<u32>,
    zech: Vec<u32>,
    add_table: Option<Vec<Fe>>,
    neg: Vec<Fe>,
    conj: Vec<Fe>,
    in_subfield: Vec<bool>,
    trace_kernel: Vec<Fe>,
    kernel_pos: Vec<u32>,
    trace_lift: Vec<Fe>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds `F_{q^2}` for `q = p^k` with the lowest irreducible modulus.
    ///
    /// Monic polynomials of degree `2k` are ordered by their coefficient
    /// vectors read from `x^{2k-1}` down to the constant term, which is the
    /// same as ordering them by `sum c_i p^i`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        let (size, degree) = Self::check_size(p, k)?;
        let modulus = (0..(size as u64))
            .map(|code| {
                let mut coeffs = digits(code as usize, p, degree);
                coeffs.push(1);
                coeffs
            })
            .find(|f| is_irreducible(f, p))
            .ok_or(Error::NoIrreducible { p, degree: 2 * k })?;
        Self::build(p, k, modulus)
    }

    /// Builds `F_{q^2}` from an explicit modulus given low-to-high, monic of
    /// degree `2k`.
    pub fn with_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<Self> {
        let (_, degree) = Self::check_size(p, k)?;
        if modulus.len() != degree + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                degree + 1,
                modulus.len()
            )));
        }
        if modulus[degree] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(
                "modulus must be monic with coefficients below p".into(),
            ));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "{modulus:?} is reducible over F_{p}"
            )));
        }
        Self::build(p, k, modulus.to_vec())
    }

    fn check_size(p: u32, k: u32) -> Result<(usize, usize)> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParams("extension degree k must be positive".into()));
        }
        let size = (p as u128).checked_pow(2 * k).unwrap_or(u128::MAX);
        if size > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(size));
        }
        Ok((size as usize, 2 * k as usize))
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self> {
        let degree = 2 * k as usize;
        let size = (p as usize).pow(2 * k);
        let q = (p as usize).pow(k);
        let units = size - 1;

        let poly_mul = |a: usize, b: usize| -> usize {
            let prod = poly_mulmod(&digits(a, p, degree), &digits(b, p, degree), &modulus, p);
            undigits(&prod, p)
        };

        // Smallest-index primitive element.
        let mut generator = None;
        let mut powers = Vec::with_capacity(units);
        for cand in 1..size {
            powers.clear();
            let mut x = 1usize;
            loop {
                powers.push(x);
                x = poly_mul(x, cand);
                if x == 1 || powers.len() > units {
                    break;
                }
            }
            if powers.len() == units {
                generator = Some(cand);
                break;
            }
        }
        let generator = generator.ok_or_else(|| {
            Error::InvalidModulus("multiplicative group is not cyclic; modulus is reducible".into())
        })?;

        let mut exp = vec![Fe::ZERO; 2 * units];
        let mut log = vec![NO_LOG; size];
        for (i, &x) in powers.iter().enumerate() {
            exp[i] = Fe(x as u16);
            exp[i + units] = Fe(x as u16);
            log[x] = i as u32;
        }

        let digit_table: Vec<Vec<u32>> = (0..size).map(|a| digits(a, p, degree)).collect();
        let add_digits = |a: usize, b: usize| -> usize {
            digit_table[a]
                .iter()
                .zip(&digit_table[b])
                .rev()
                .fold(0usize, |acc, (x, y)| acc * p as usize + ((x + y) % p) as usize)
        };
        let neg: Vec<Fe> = digit_table
            .iter()
            .map(|d| {
                let d: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                Fe(undigits(&d, p) as u16)
            })
            .collect();
        let zech: Vec<u32> = (0..units)
            .map(|n| log[add_digits(1, exp[n].index())])
            .collect();
        let add_table = (size <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    t.push(Fe(add_digits(a, b) as u16));
                }
            }
            t
        });

        let mut field = Field {
            p,
            k,
            q,
            size,
            modulus,
            generator: Fe(generator as u16),
            exp,
            log,
            zech,
            add_table,
            neg,
            conj: Vec::new(),
            in_subfield: Vec::new(),
            trace_kernel: Vec::new(),
            kernel_pos: Vec::new(),
            trace_lift: Vec::new(),
        };

        field.conj = (0..size).map(|x| field.pow(Fe(x as u16), q as u64)).collect();
        field.in_subfield = (0..size).map(|x| field.conj[x].index() == x).collect();
        field.trace_kernel = (0..size)
            .map(|x| Fe(x as u16))
            .filter(|&x| field.trace(x).is_zero())
            .collect();
        field.kernel_pos = vec![u32::MAX; size];
        for (i, &y) in field.trace_kernel.iter().enumerate() {
            field.kernel_pos[y.index()] = i as u32;
        }
        field.trace_lift = vec![Fe::ZERO; size];
        let mut lifted = vec![false; size];
        for x in 0..size {
            let t = field.trace(Fe(x as u16)).index();
            if !lifted[t] {
                lifted[t] = true;
                field.trace_lift[t] = Fe(x as u16);
            }
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree of `F_q` over `F_p`.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Order of the subfield `F_q`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Order of the whole field `F_{q^2}`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Modulus coefficients, low-to-high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(|x| Fe(x as u16))
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        assert!(coeffs.len() <= 2 * self.k as usize);
        let c: Vec<u32> = coeffs.iter().map(|c| c % self.p).collect();
        Fe(undigits(&c, self.p) as u16)
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x.index(), self.p, 2 * self.k as usize)
    }

    /// An `F_p`-basis of `F_{q^2}`: the powers `1, x, ..., x^{2k-1}`.
    pub fn additive_basis(&self) -> Vec<Fe> {
        (0..2 * self.k).map(|i| Fe(self.p.pow(i) as u16)).collect()
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if let Some(t) = &self.add_table {
            return t[a.index() * self.size + b.index()];
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let units = (self.size - 1) as u32;
        let la = self.log[a.index()];
        let lb = self.log[b.index()];
        let d = if lb >= la { lb - la } else { lb + units - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            self.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        self.exp[(self.log[a.index()] + self.log[b.index()]) as usize]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let units = (self.size - 1) as u32;
        let l = self.log[a.index()];
        Some(self.exp[((units - l) % units) as usize])
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let units = (self.size - 1) as u64;
        let l = (self.log[a.index()] as u64 * (e % units)) % units;
        self.exp[l as usize]
    }

    /// Frobenius conjugation `x -> x^q`.
    #[inline]
    pub fn conj(&self, a: Fe) -> Fe {
        self.conj[a.index()]
    }

    /// `x + conj(x)`, which lands in `F_q`.
    pub fn trace(&self, a: Fe) -> Fe {
        self.add(a, self.conj(a))
    }

    /// `x * conj(x)`, which lands in `F_q`.
    pub fn norm(&self, a: Fe) -> Fe {
        self.mul(a, self.conj(a))
    }

    pub fn in_subfield(&self, a: Fe) -> bool {
        self.in_subfield[a.index()]
    }

    /// The `q` elements with `y + conj(y) = 0`, in index order. Entry 0 is zero.
    pub fn trace_kernel(&self) -> &[Fe] {
        &self.trace_kernel
    }

    /// Position of `y` in [`Field::trace_kernel`], if `y` has zero trace.
    pub fn kernel_position(&self, y: Fe) -> Option<usize> {
        match self.kernel_pos[y.index()] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// The lowest-index `x` with `x + conj(x) = c`, for `c` in `F_q`.
    pub fn trace_lift(&self, c: Fe) -> Option<Fe> {
        self.in_subfield(c).then(|| self.trace_lift[c.index()])
    }

    /// An `F_p`-basis of the trace kernel, chosen greedily in index order.
    pub fn trace_kernel_basis(&self) -> Vec<Fe> {
        let mut span = vec![Fe::ZERO];
        let mut basis = Vec::new();
        for &y in &self.trace_kernel {
            if span.contains(&y) {
                continue;
            }
            basis.push(y);
            let mut next = Vec::with_capacity(span.len() * self.p as usize);
            for &s in &span {
                let mut acc = s;
                for _ in 0..self.p {
                    next.push(acc);
                    acc = self.add(acc, y);
                }
            }
            next.sort_unstable();
            next.dedup();
            span = next;
        }
        basis
    }
}

fn digits(mut x: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as usize) as u32);
        x /= p as usize;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// `a * b mod f` over `F_p`, all low-to-high; `f` monic.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let degree = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_reduce(&mut prod, f, p);
    prod.truncate(degree);
    prod.resize(degree, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_reduce(r: &mut [u64], f: &[u32], p: u32) {
    let degree = f.len() - 1;
    let lead_inv = mod_inverse(f[degree] as u64, p as u64);
    for top in (degree..r.len()).rev() {
        let c = r[top] * lead_inv % p as u64;
        if c == 0 {
            continue;
        }
        for (i, &fc) in f.iter().enumerate() {
            let pos = top - degree + i;
            r[pos] = (r[pos] + (p as u64 - c) * fc as u64) % p as u64;
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Irreducibility by trial division by every monic polynomial of degree at
/// most `deg f / 2`. Feasible for the field sizes allowed here.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = f.len() - 1;
    if degree == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = digits(code, p, d);
            g.push(1);
            let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
            poly_reduce(&mut r, &g, p);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_fixes_exactly_the_subfield() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.size(), 25);
        let fixed = f.elements().filter(|&x| f.conj(x) == x).count();
        assert_eq!(fixed, 5);
        for x in f.elements() {
            assert_eq!(f.conj(f.conj(x)), x);
        }
    }

    #[test]
    fn lowest_modulus_is_chosen() {
        // x^2 + 2 is the first monic irreducible quadratic over F_5.
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn conj_with_explicit_modulus_negates_the_root() {
        // Oracle: x^5 mod (x^2 - 2) by repeated squaring on coefficient pairs.
        let f = Field::with_modulus(5, 1, &[3, 0, 1]).unwrap();
        let mulmod = |a: (i64, i64), b: (i64, i64)| {
            // (a0 + a1 x)(b0 + b1 x) with x^2 = 2
            (
                (a.0 * b.0 + 2 * a.1 * b.1).rem_euclid(5),
                (a.0 * b.1 + a.1 * b.0).rem_euclid(5),
            )
        };
        let x5 = {
            let x = (0, 1);
            let x2 = mulmod(x, x);
            let x4 = mulmod(x2, x2);
            mulmod(x4, x)
        };
        assert_eq!(x5, (0, 4));
        for a in 0..5u32 {
            for b in 0..5u32 {
                let z = f.from_coeffs(&[a, b]);
                let expect = f.from_coeffs(&[a, (5 - b) % 5]);
                assert_eq!(f.conj(z), expect);
            }
        }
    }

    #[test]
    fn characteristic_two_anti_fixed_set() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.size(), 4);
        let count = f.elements().filter(|&x| f.conj(x) == f.neg(x)).count();
        assert_eq!(count, 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 9), Err(Error::FieldTooLarge(_))));
        assert!(matches!(
            Field::with_modulus(5, 1, &[1, 0, 1]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(Field::new(3, 0).is_err());
    }

    #[test]
    fn zech_addition_matches_digitwise_addition() {
        // 3^8 = 6561 > ADD_TABLE_LIMIT, so this field adds through Zech logs.
        let f = Field::new(3, 4).unwrap();
        assert!(f.add_table.is_none());
        let deg = 8;
        for a in (0..f.size()).step_by(37) {
            for b in (0..f.size()).step_by(53) {
                let da = digits(a, 3, deg);
                let db = digits(b, 3, deg);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(Fe(a as u16), Fe(b as u16)).index(), undigits(&s, 3));
            }
        }
    }

    #[test]
    fn largest_field_builds() {
        let f = Field::new(2, 8).unwrap();
        assert_eq!(f.size(), 65536);
        assert_eq!(f.q(), 256);
        let fixed = f.elements().filter(|&x| f.in_subfield(x)).count();
        assert_eq!(fixed, 256);
    }

    #[test]
    fn trace_kernel_and_lifts() {
        for (p, k) in [(5, 1), (5, 2), (3, 1), (2, 2), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            assert_eq!(f.trace_kernel().len(), f.q());
            assert_eq!(f.trace_kernel()[0], Fe::ZERO);
            assert_eq!(f.trace_kernel_basis().len(), k as usize);
            for c in f.elements().filter(|&c| f.in_subfield(c)) {
                let x = f.trace_lift(c).unwrap();
                assert_eq!(f.trace(x), c);
            }
            assert_eq!(f.trace_lift(Fe::ZERO), Some(Fe::ZERO));
        }
    }

    #[test]
    fn inverse_and_pow() {
        let f = Field::new(5, 2).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            assert_eq!(f.pow(x, (f.size() - 1) as u64), Fe::ONE);
        }
        assert_eq!(f.inv(Fe::ZERO), None);
    }
}
