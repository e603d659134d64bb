//! q-integers, q-factorials, Gaussian binomials and q-multinomials, plus the
//! partition and multiset counts they enumerate.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::IntPoly;

/// A dimension sequence `0 < d_1 < ... < d_r < n`.
///
/// The block sizes are `e_i = d_i - d_{i-1}` with `d_0 = 0` and
/// `d_{r+1} = n`, so there are always `r + 1` blocks, each of size at
/// least one. An empty `d` is allowed and gives a single block of size `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagShape {
    n: usize,
    d: Vec<usize>,
}

impl FlagShape {
    pub fn new(n: usize, d: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if d.first() == Some(&0) {
            return Err(Error::invalid("d entries must be positive"));
        }
        if d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "d must be strictly increasing, got {d:?}"
            )));
        }
        if let Some(&last) = d.last() {
            if last >= n {
                return Err(Error::invalid(format!(
                    "last entry of d must be below n = {n}, got {last}"
                )));
            }
        }
        Ok(FlagShape { n, d })
    }

    /// Shape whose block sizes are `e` (all positive).
    pub fn from_blocks(e: &[usize]) -> Result<Self> {
        if e.is_empty() || e.contains(&0) {
            return Err(Error::invalid(format!("block sizes must be positive, got {e:?}")));
        }
        let mut d: Vec<usize> = e
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        let n = d.pop().unwrap();
        FlagShape::new(n, d)
    }

    /// `d = (1, 2, ..., n-1)`: permutations of `[n]`, full flags.
    pub fn full(n: usize) -> Result<Self> {
        FlagShape::new(n, (1..n).collect())
    }

    /// Every shape with the given `n` (all subsets of `{1, ..., n-1}`),
    /// ordered by the bitmask of `d`.
    pub fn all(n: usize) -> Vec<FlagShape> {
        assert!((1..64).contains(&n));
        (0u64..1 << (n - 1))
            .map(|mask| FlagShape {
                n,
                d: (1..n).filter(|&i| mask >> (i - 1) & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    pub fn r(&self) -> usize {
        self.d.len()
    }

    /// `(d_0, d_1, ..., d_r, d_{r+1}) = (0, ..., n)`.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut b = Vec::with_capacity(self.d.len() + 2);
        b.push(0);
        b.extend_from_slice(&self.d);
        b.push(self.n);
        b
    }

    /// Block sizes `e_1, ..., e_{r+1}`.
    pub fn blocks(&self) -> Vec<usize> {
        self.boundaries().windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Number of blocks, `r + 1`.
    pub fn num_blocks(&self) -> usize {
        self.d.len() + 1
    }

    /// 1-based block index of position `j` in `[n]` (the map `mu`).
    pub fn block_of(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.n);
        self.d.partition_point(|&di| di < j) + 1
    }

    /// `sum_{i<j} e_i e_j`, the largest inversion count.
    pub fn nu(&self) -> usize {
        let e = self.blocks();
        let sq: usize = e.iter().map(|x| x * x).sum();
        (self.n * self.n - sq) / 2
    }

    /// `sum_i e_i (e_i - 1) / 2`.
    pub fn eta(&self) -> usize {
        self.blocks().iter().map(|e| e * (e - 1) / 2).sum()
    }

    /// `n! / prod e_i!`.
    pub fn multinomial(&self) -> BigUint {
        let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
        let denom = self
            .blocks()
            .iter()
            .fold(BigUint::one(), |acc, &e| acc * fact(e));
        fact(self.n) / denom
    }

    /// `prod e_i!`.
    pub fn block_factorial_product(&self) -> BigUint {
        self.blocks().iter().fold(BigUint::one(), |acc, &e| {
            acc * (1..=e).fold(BigUint::one(), |a, i| a * i)
        })
    }

    /// True when every entry of `self.d` also occurs in `refined.d`.
    pub fn is_refined_by(&self, refined: &FlagShape) -> bool {
        self.n == refined.n && self.d.iter().all(|x| refined.d.binary_search(x).is_ok())
    }
}

impl fmt::Debug for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlagShape(n={}, d={:?})", self.n, self.d)
    }
}

impl fmt::Display for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d=", self.n)?;
        if self.d.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.d.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("<"))
    }
}

/// `1 + x + ... + x^{n-1}`; zero for `n = 0`.
pub fn q_int(n: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); n])
}

/// `prod_{m=1}^{n} q_int(m)`.
pub fn q_factorial(n: usize) -> IntPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial coefficient via the Pascal-type recurrence
/// `[n,e] = [n-1,e-1] + x^e [n-1,e]`.
pub fn q_binomial(n: usize, e: usize) -> Result<IntPoly> {
    if e > n {
        return Err(Error::invalid(format!("q-binomial needs e <= n, got ({n}, {e})")));
    }
    let e = e.min(n - e);
    // row[j] holds [m, j] for the current m
    let mut row: Vec<IntPoly> = vec![IntPoly::zero(); e + 1];
    row[0] = IntPoly::one();
    for m in 1..=n {
        for j in (1..=e.min(m)).rev() {
            row[j] = if j == m {
                IntPoly::one()
            } else {
                &row[j - 1] + &row[j].shift(j)
            };
        }
    }
    Ok(row.swap_remove(e))
}

/// Gaussian binomial through the quotient of q-factorials, with exact
/// polynomial division. Used as an independent check on [`q_binomial`].
pub fn q_binomial_by_quotient(n: usize, e: usize) -> Result<IntPoly> {
    if e > n {
        return Err(Error::invalid(format!("q-binomial needs e <= n, got ({n}, {e})")));
    }
    let denom = &q_factorial(e) * &q_factorial(n - e);
    q_factorial(n)
        .div_exact(&denom)
        .ok_or_else(|| Error::invalid("q-factorial quotient is not exact"))
}

/// `prod_{i=1}^{r} [n - d_{i-1}, e_i]`; the constant 1 for empty `d`.
pub fn q_multinomial(shape: &FlagShape) -> IntPoly {
    let b = shape.boundaries();
    let e = shape.blocks();
    (0..shape.r())
        .map(|i| q_binomial(shape.n() - b[i], e[i]).expect("block fits"))
        .product()
}

/// Number of partitions of `m` into at most `s` parts, each at most `e`.
pub fn partition_count(e: usize, s: usize, m: i64) -> BigUint {
    if m < 0 {
        return BigUint::zero();
    }
    partition_counts(e, s, m as usize).swap_remove(m as usize)
}

/// `partition_count(e, s, m)` for all `0 <= m <= max_m`.
///
/// Dynamic program over the largest allowed part: a partition either has
/// no part equal to `e`, or removing one copy of `e` leaves a partition
/// with one fewer part.
pub fn partition_counts(e: usize, s: usize, max_m: usize) -> Vec<BigUint> {
    // table[j][m] = partitions of m into at most j parts, each <= current bound
    let mut table: Vec<Vec<BigUint>> = (0..=s)
        .map(|_| {
            let mut v = vec![BigUint::zero(); max_m + 1];
            v[0] = BigUint::one();
            v
        })
        .collect();
    for bound in 1..=e {
        for j in 1..=s {
            for m in bound..=max_m {
                let add = table[j - 1][m - bound].clone();
                table[j][m] += add;
            }
        }
    }
    table.swap_remove(s)
}

/// Enumerates every multiset of at most `s` positive integers, each at most
/// `e`, and returns `sum x^{sum(M)}` together with the number of multisets.
pub fn multiset_sum_poly(e: usize, s: usize, cap: u64) -> Result<(IntPoly, BigUint)> {
    let count = binomial(e + s, e);
    if count > BigUint::from(cap) {
        return Err(Error::cap("multiset enumeration", count, cap));
    }
    let mut hist: Vec<u64> = vec![0; e * s + 1];
    let mut total = 0u64;
    // multisets as weakly increasing sequences; extend with parts >= last
    fn walk(min_part: usize, e: usize, left: usize, sum: usize, hist: &mut [u64], total: &mut u64) {
        hist[sum] += 1;
        *total += 1;
        if left == 0 {
            return;
        }
        for part in min_part..=e {
            walk(part, e, left - 1, sum + part, hist, total);
        }
    }
    walk(1, e, s, 0, &mut hist, &mut total);
    let poly = IntPoly::from_coeffs(hist.into_iter().map(BigInt::from).collect());
    Ok((poly, BigUint::from(total)))
}

/// Ordinary binomial coefficient.
pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn shape_validation() {
        assert!(FlagShape::new(0, vec![]).is_err());
        assert!(FlagShape::new(3, vec![0]).is_err());
        assert!(FlagShape::new(3, vec![2, 1]).is_err());
        assert!(FlagShape::new(3, vec![1, 1]).is_err());
        assert!(FlagShape::new(3, vec![3]).is_err());
        let s = FlagShape::new(7, vec![2, 4]).unwrap();
        assert_eq!(s.blocks(), vec![2, 2, 3]);
        assert_eq!(s.nu(), 4 + 6 + 6);
        assert_eq!(s.eta(), 1 + 1 + 3);
        assert_eq!(s.multinomial(), BigUint::from(210u32));
        assert_eq!(FlagShape::from_blocks(&[2, 2, 3]).unwrap(), s);
        assert_eq!(s.block_of(1), 1);
        assert_eq!(s.block_of(2), 1);
        assert_eq!(s.block_of(3), 2);
        assert_eq!(s.block_of(5), 3);
        assert_eq!(s.to_string(), "n=7 d=2<4");
    }

    #[test]
    fn shape_identities() {
        for n in 1..=9 {
            for s in FlagShape::all(n) {
                assert_eq!(s.blocks().iter().sum::<usize>(), n);
                assert_eq!(s.nu() + s.eta() + n, n * (n + 1) / 2);
                assert!(s.nu() <= n * (n - 1) / 2);
            }
            assert_eq!(FlagShape::all(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn q_int_and_factorial() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(1), IntPoly::one());
        assert_eq!(q_int(3), p(&[1, 1, 1]));
        assert_eq!(q_factorial(0), IntPoly::one());
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
        let mut fact = BigInt::one();
        for n in 1..=10 {
            fact *= n;
            assert_eq!(q_factorial(n as usize).eval_i64(1), fact);
        }
    }

    #[test]
    fn q_binomial_examples() {
        for n in 0..6 {
            assert_eq!(q_binomial(n, 0).unwrap(), IntPoly::one());
            assert_eq!(q_binomial(n, n).unwrap(), IntPoly::one());
        }
        assert_eq!(q_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(2, 1).unwrap(), p(&[1, 1]));
        assert!(q_binomial(2, 3).is_err());
    }

    #[test]
    fn q_binomial_routes_agree() {
        for n in 0..=14 {
            for e in 0..=n {
                let rec = q_binomial(n, e).unwrap();
                assert_eq!(rec, q_binomial_by_quotient(n, e).unwrap(), "({n},{e})");
                assert_eq!(rec.degree(), Some(e * (n - e)));
                assert!(rec.coeffs().iter().all(|c| c >= &BigInt::one()));
                assert_eq!(rec.reverse(e * (n - e)).unwrap(), rec);
                assert_eq!(rec, q_binomial(n, n - e).unwrap());
            }
        }
    }

    #[test]
    fn q_multinomial_examples() {
        for n in 1..=7 {
            assert_eq!(q_multinomial(&FlagShape::full(n).unwrap()), q_factorial(n));
        }
        assert_eq!(q_multinomial(&FlagShape::new(3, vec![2]).unwrap()), p(&[1, 1, 1]));
        assert_eq!(q_multinomial(&FlagShape::new(3, vec![1, 2]).unwrap()), p(&[1, 2, 2, 1]));
        assert_eq!(q_multinomial(&FlagShape::new(5, vec![]).unwrap()), IntPoly::one());
    }

    #[test]
    fn q_multinomial_degree_and_value_at_one() {
        for n in 1..=8 {
            for s in FlagShape::all(n) {
                let poly = q_multinomial(&s);
                assert_eq!(poly.degree(), Some(s.nu()));
                assert_eq!(poly.eval_i64(1), BigInt::from(s.multinomial()));
                // quotient form (1.1) as an independent route
                let denom: IntPoly = s.blocks().into_iter().map(q_factorial).product();
                assert_eq!(q_factorial(n).div_exact(&denom), Some(poly));
            }
        }
    }

    #[test]
    fn partition_count_examples() {
        assert_eq!(partition_count(2, 2, 2), BigUint::from(2u32));
        assert_eq!(partition_count(3, 5, 0), BigUint::one());
        assert_eq!(partition_count(0, 0, 0), BigUint::one());
        assert_eq!(partition_count(2, 2, -1), BigUint::zero());
        let got: Vec<BigUint> = (0..=4).map(|m| partition_count(2, 2, m)).collect();
        let want: Vec<BigUint> = [1u32, 1, 2, 1, 1].iter().map(|&c| BigUint::from(c)).collect();
        assert_eq!(got, want);
        assert_eq!(partition_count(2, 2, 5), BigUint::zero());
    }

    #[test]
    fn multiset_examples() {
        let (poly, count) = multiset_sum_poly(2, 2, 1000).unwrap();
        assert_eq!(poly, p(&[1, 1, 2, 1, 1]));
        assert_eq!(count, BigUint::from(6u32));
        assert_eq!(multiset_sum_poly(0, 4, 1000).unwrap().0, IntPoly::one());
        assert_eq!(multiset_sum_poly(4, 0, 1000).unwrap().0, IntPoly::one());
        let err = multiset_sum_poly(10, 10, 1000).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn partition_and_multiset_match_q_binomial() {
        for n in 1..=10 {
            for e in 0..=n {
                let qb = q_binomial(n, e).unwrap();
                let parts = partition_counts(e, n - e, e * (n - e));
                let as_poly = IntPoly::from_coeffs(parts.into_iter().map(BigInt::from).collect());
                assert_eq!(as_poly, qb);
                let (ms, count) = multiset_sum_poly(e, n - e, 1 << 20).unwrap();
                assert_eq!(ms, qb);
                assert_eq!(count, binomial(n, e));
            }
        }
    }
}
