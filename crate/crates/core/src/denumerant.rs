//! Sylvester denumerants `D_w(m)`, the signed subset counts `psi_n(r)`
//! (the coefficients of `(1-t)(1-t^2)...(1-t^n)`), and the formulas that
//! express `I_n(d; k)` through them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{series_reciprocal_product, IntPoly, Rational, TruncatedSeries};
use crate::qanalogue::FlagShape;

/// A nonempty tuple of positive integer weights.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(w: Vec<i64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::invalid("weight vector must be nonempty"));
        }
        if let Some(bad) = w.iter().find(|&&x| x < 1) {
            return Err(Error::invalid(format!("weights must be positive, got {bad}")));
        }
        Ok(WeightVector(w))
    }

    /// `(1, 1, ..., 1)` of length `n`.
    pub fn ones(n: usize) -> Result<Self> {
        WeightVector::new(vec![1; n])
    }

    /// `(1, 2, ..., n)`.
    pub fn range(n: usize) -> Result<Self> {
        WeightVector::new((1..=n as i64).collect())
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lcm(&self) -> i64 {
        self.0.iter().fold(1, |acc, &w| acc.lcm(&w))
    }

    /// `prod 1/(1 - t^{w_i})` up to `t^order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        series_reciprocal_product(&self.0, order).expect("weights validated")
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightVector({:?})", self.0)
    }
}

/// `D_w(m)`: solutions of `i_1 w_1 + ... + i_n w_n = m` in nonnegative
/// integers; zero for negative `m`.
pub fn denumerant(w: &WeightVector, m: i64) -> BigUint {
    if m < 0 {
        return BigUint::zero();
    }
    w.series(m as usize)
        .coeff(m)
        .to_biguint()
        .expect("denumerants are nonnegative")
}

/// `epsilon(d, n)`: each block of size `e` contributes `1, 2, ..., e`.
pub fn epsilon_weights(shape: &FlagShape) -> WeightVector {
    let w = shape
        .blocks()
        .into_iter()
        .flat_map(|e| 1..=e as i64)
        .collect();
    WeightVector::new(w).expect("blocks are nonempty")
}

/// How to compute `psi_n(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsiMethod {
    /// Signed count of subsets `T` of `[n]` with element sum `r`.
    SubsetOracle,
    /// Coefficient of `t^r` in `(1-t)(1-t^2)...(1-t^n)`.
    FnCoefficients,
    /// Euler's pentagonal rule; only valid for `1 <= r <= n`.
    Pentagonal,
    /// `exp(log f_n)` expansion in exact rationals.
    ExpLog,
}

impl PsiMethod {
    pub const ALL: [PsiMethod; 4] = [
        PsiMethod::SubsetOracle,
        PsiMethod::FnCoefficients,
        PsiMethod::Pentagonal,
        PsiMethod::ExpLog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PsiMethod::SubsetOracle => "subset",
            PsiMethod::FnCoefficients => "fn",
            PsiMethod::Pentagonal => "pentagonal",
            PsiMethod::ExpLog => "exp-log",
        }
    }
}

impl std::str::FromStr for PsiMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PsiMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown psi method {s:?}")))
    }
}

/// Coefficients `psi_n(0), ..., psi_n(n(n+1)/2)` of `f_n(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTable {
    n: usize,
    values: Vec<BigInt>,
}

impl PsiTable {
    pub fn new(n: usize) -> Self {
        let mut poly = IntPoly::one();
        for i in 1..=n {
            poly = &poly * &(&IntPoly::one() - &IntPoly::monomial(1, i));
        }
        let top = n * (n + 1) / 2;
        PsiTable {
            n,
            values: (0..=top).map(|r| poly.coeff(r)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `psi_n(r)`; zero outside `0..=n(n+1)/2`.
    pub fn get(&self, r: i64) -> BigInt {
        if r < 0 {
            return BigInt::zero();
        }
        self.values.get(r as usize).cloned().unwrap_or_default()
    }
}

/// `psi_n(r)` by the requested route.
///
/// `cap` bounds the `2^n` subsets visited by [`PsiMethod::SubsetOracle`].
pub fn psi(n: usize, r: i64, method: PsiMethod, cap: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("psi needs n >= 1"));
    }
    let top = (n * (n + 1) / 2) as i64;
    if method == PsiMethod::Pentagonal && !(1..=n as i64).contains(&r) {
        return Err(Error::invalid(format!(
            "pentagonal rule only covers 1 <= r <= n = {n}, got r = {r}"
        )));
    }
    if method == PsiMethod::SubsetOracle && (n >= 64 || 1u64 << n > cap) {
        return Err(Error::cap("subset enumeration", format!("2^{n}"), cap));
    }
    if r < 0 || r > top {
        return Ok(BigInt::zero());
    }
    match method {
        PsiMethod::FnCoefficients => Ok(PsiTable::new(n).get(r)),
        PsiMethod::SubsetOracle => Ok(BigInt::from(psi_subset(n, r as usize))),
        PsiMethod::Pentagonal => Ok(BigInt::from(psi_pentagonal(r as usize))),
        PsiMethod::ExpLog => psi_exp_log_table(n)?
            .into_iter()
            .nth(r as usize)
            .ok_or_else(|| Error::invalid("exp-log table too short")),
    }
}

fn psi_subset(n: usize, r: usize) -> i64 {
    let mut total = 0i64;
    for mask in 0u64..1 << n {
        let sum: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        if sum == r {
            total += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    total
}

/// `(-1)^s` when `2r = s(3s +- 1)` for some natural `s`, else 0.
fn psi_pentagonal(r: usize) -> i64 {
    let twice = 2 * r;
    if twice == 0 {
        return 1;
    }
    let mut s = 1usize;
    while s * (3 * s - 1) <= twice {
        if s * (3 * s - 1) == twice || s * (3 * s + 1) == twice {
            return if s.is_multiple_of(2) { 1 } else { -1 };
        }
        s += 1;
    }
    0
}

/// `sum_{1 <= d <= n, d | k} d`.
pub fn restricted_divisor_sum(n: usize, k: i64) -> Result<u64> {
    if k <= 0 {
        return Err(Error::invalid(format!("restricted divisor sum needs k >= 1, got {k}")));
    }
    let k = k as u64;
    Ok((1..=(n as u64).min(k)).filter(|d| k.is_multiple_of(*d)).sum())
}

/// The same sum written as `sum_{d=1}^{min(n,k)} floor(1 + floor(k/d) - k/d) * d`.
pub fn restricted_divisor_sum_floor(n: usize, k: i64) -> Result<u64> {
    if k <= 0 {
        return Err(Error::invalid(format!("restricted divisor sum needs k >= 1, got {k}")));
    }
    let mut total = BigInt::zero();
    for d in 1..=(n as i64).min(k) {
        let ratio = Rational::new(k, d).expect("d >= 1");
        let inner = &(&Rational::from_integer(1) + &Rational::from_integer(ratio.floor())) - &ratio;
        total += inner.floor() * d;
    }
    Ok(u64::try_from(total).expect("sum of divisors fits"))
}

/// `alpha_n(k) = sigma_n(k) / k`.
pub fn alpha(n: usize, k: i64) -> Result<Rational> {
    Rational::new(restricted_divisor_sum(n, k)?, k)
}

/// `psi_n(0..=n(n+1)/2)` from
/// `psi_n(r) = sum_{i_1 + 2 i_2 + ... + r i_r = r} prod_j (-alpha_n(j))^{i_j} / i_j!`.
///
/// The multi-index sum factors as the coefficient of `t^r` in
/// `prod_j sum_i (-alpha_n(j) t^j)^i / i!`; it is accumulated one `j` at a
/// time in exact rationals. Every coefficient is checked to be integral.
pub fn psi_exp_log_table(n: usize) -> Result<Vec<BigInt>> {
    let top = n * (n + 1) / 2;
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); top + 1];
    acc[0] = BigRational::one();
    for j in 1..=top {
        let a = -to_big_rational(&alpha(n, j as i64)?);
        // factor[i*j] = a^i / i!
        let mut factor: Vec<(usize, BigRational)> = vec![(0, BigRational::one())];
        let mut term = BigRational::one();
        let mut i = 1usize;
        while i * j <= top {
            term = term * &a / BigRational::from_integer(BigInt::from(i));
            factor.push((i * j, term.clone()));
            i += 1;
        }
        let mut next = vec![BigRational::zero(); top + 1];
        for (deg, coef) in acc.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (shift, f) in &factor {
                if deg + shift > top {
                    break;
                }
                next[deg + shift] += coef * f;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .enumerate()
        .map(|(r, v)| {
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::invalid(format!("exp-log value for r = {r} is not integral: {v}")))
            }
        })
        .collect()
}

/// `psi_n(r)` by listing every multi-index `(i_1, ..., i_r)` with
/// `i_1 + 2 i_2 + ... + r i_r = r` and summing the exp-log terms. The
/// number of terms is the partition number `p(r)`, so this is only
/// practical for small `r`.
pub fn psi_exp_log_enumerated(n: usize, r: usize) -> Result<BigInt> {
    let alphas: Vec<Rational> = (1..=r as i64)
        .map(|j| alpha(n, j).map(|a| -&a))
        .collect::<Result<_>>()?;
    let mut total = Rational::zero();
    let mut mult = vec![0u32; r + 1];
    fn walk(part: usize, left: usize, mult: &mut [u32], alphas: &[Rational], total: &mut Rational) {
        if left == 0 {
            let mut term = Rational::from_integer(1);
            for (j, &i) in mult.iter().enumerate().skip(1) {
                if i == 0 {
                    continue;
                }
                let fact: BigInt = (1..=i).map(BigInt::from).product();
                term = &term * &alphas[j - 1].pow(i);
                term = &term * &Rational::new(1, fact).expect("nonzero");
            }
            *total = &*total + &term;
            return;
        }
        if part == 0 {
            return;
        }
        let max = left / part;
        for i in (0..=max).rev() {
            mult[part] = i as u32;
            walk(part - 1, left - i * part, mult, alphas, total);
        }
        mult[part] = 0;
    }
    walk(r, r, &mut mult, &alphas, &mut total);
    total
        .to_integer()
        .ok_or_else(|| Error::invalid(format!("exp-log sum for r = {r} is not integral: {total}")))
}

fn to_big_rational(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

/// `C(a, b)` extended to all integers: zero when `min(a, b) < 0` or
/// `a < b`, otherwise `prod_{0 <= i < b} (a - i) / (i + 1)`.
pub fn generalized_binomial(a: i64, b: i64) -> BigInt {
    if a.min(b) < 0 || a < b {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Checks, up to `t^order`, that
/// `prod_{i=1}^{r} (1 - t^i) / prod_i (1 - t^{w_i})` has coefficients
/// `sum_{T subset [r]} (-1)^{|T|} D_w(m - omega(T))`.
pub fn signed_subset_identity_check(r: usize, w: &WeightVector, order: usize) -> bool {
    assert!(r < 32, "2^r subsets");
    let base = w.series(order);
    let mut lhs = base.clone();
    for i in 1..=r {
        lhs.multiply_by_one_minus_power(i);
    }
    let subsets: Vec<(i64, bool)> = (0u32..1 << r)
        .map(|mask| {
            let omega: i64 = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 + 1).sum();
            (omega, mask.count_ones() % 2 == 1)
        })
        .collect();
    (0..=order as i64).all(|m| {
        let rhs: BigInt = subsets
            .iter()
            .map(|&(omega, odd)| {
                let d = base.coeff(m - omega);
                if odd {
                    -d
                } else {
                    d
                }
            })
            .sum();
        rhs == lhs.coeff(m)
    })
}

/// `I_n(d; k) = sum_{i=0}^{k} psi_n(i) D_{epsilon(d,n)}(k - i)`.
pub fn mahonian_via_denumerant(shape: &FlagShape, k: usize) -> BigUint {
    let psi = PsiTable::new(shape.n());
    let dser = epsilon_weights(shape).series(k);
    let k = k as i64;
    let total: BigInt = (0..=k).map(|i| psi.get(i) * dser.coeff(k - i)).sum();
    total.to_biguint().expect("inversion counts are nonnegative")
}

/// `I_n(d; k) = sum_{T subset [n]} (-1)^{|T|} D_{epsilon(d,n)}(k - omega(T))`,
/// visiting all `2^n` subsets (bounded by `cap`).
pub fn mahonian_via_denumerant_subsets(shape: &FlagShape, k: usize, cap: u64) -> Result<BigUint> {
    let n = shape.n();
    if n >= 64 || 1u64 << n > cap {
        return Err(Error::cap("subset enumeration", format!("2^{n}"), cap));
    }
    let dser = epsilon_weights(shape).series(k);
    let mut total = BigInt::zero();
    for mask in 0u64..1 << n {
        let omega: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 + 1).sum();
        let d = dser.coeff(k as i64 - omega);
        if mask.count_ones() % 2 == 0 {
            total += d;
        } else {
            total -= d;
        }
    }
    Ok(total.to_biguint().expect("inversion counts are nonnegative"))
}

/// `G_n(t) = f_n(t) / (1 - t)^n` up to `t^order`; the coefficient of `t^k`
/// is `I_n(k)`.
pub fn full_mahonian_series(n: usize, order: usize) -> TruncatedSeries {
    let table = PsiTable::new(n);
    let f = IntPoly::from_coeffs(table.values().to_vec());
    let mut g = TruncatedSeries::from_poly(&f, order);
    for _ in 0..n {
        g.divide_by_one_minus_power(1);
    }
    g
}

/// `I_n(k) = sum_{i=0}^{k} psi_n(i) C(n - 1 + k - i, n - 1)`.
pub fn full_mahonian_via_binomials(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let psi = PsiTable::new(n);
    let (n, k) = (n as i64, k as i64);
    let total: BigInt = (0..=k)
        .map(|i| psi.get(i) * generalized_binomial(n - 1 + k - i, n - 1))
        .sum();
    Ok(total.to_biguint().expect("inversion counts are nonnegative"))
}

/// True when the `n`-th forward difference of `m -> D_w(m)` with step
/// `lcm(w)` vanishes at every start point `m0, m0 + 1, ..., m0 + samples - 1`.
///
/// Restricted to one residue class mod `lcm(w)`, `D_w` is a polynomial of
/// degree at most `n - 1`, so these differences must all be zero.
pub fn quasipolynomial_check(w: &WeightVector, m0: usize, samples: usize) -> bool {
    let n = w.len();
    let step = w.lcm() as usize;
    let top = m0 + samples.saturating_sub(1) + n * step;
    let ser = w.series(top);
    let signs: Vec<BigInt> = (0..=n)
        .map(|j| {
            let c = generalized_binomial(n as i64, j as i64);
            if (n - j).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .collect();
    (m0..m0 + samples).all(|start| {
        let diff: BigInt = (0..=n)
            .map(|j| &signs[j] * ser.coeff((start + j * step) as i64))
            .sum();
        diff.is_zero()
    })
}

/// `C(n-1+m, n-1) / prod e_i!  <=  D_{epsilon(d,n)}(m)  <=  C(n-1+eta+m, n-1) / prod e_i!`.
pub fn denumerant_bounds(shape: &FlagShape, m: usize) -> (Rational, Rational) {
    let n = shape.n() as i64;
    let m = m as i64;
    let eta = shape.eta() as i64;
    let denom = BigInt::from(shape.block_factorial_product());
    (
        Rational::new(generalized_binomial(n - 1 + m, n - 1), denom.clone()).expect("nonzero"),
        Rational::new(generalized_binomial(n - 1 + eta + m, n - 1), denom).expect("nonzero"),
    )
}
