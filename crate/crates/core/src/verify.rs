//! Self-verification suites: every identity the library relies on,
//! re-checked against its brute-force oracle up to a size bound.
//!
//! Checks run in parallel; results come back in a fixed order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::denumerant::{
    denumerant, denumerant_bounds, epsilon_weights, full_mahonian_series, full_mahonian_via_binomials,
    mahonian_via_denumerant, mahonian_via_denumerant_subsets, psi, psi_exp_log_table, quasipolynomial_check,
    restricted_divisor_sum, restricted_divisor_sum_floor, signed_subset_identity_check, PsiMethod, PsiTable,
    WeightVector,
};
use crate::error::{Error, Result};
use crate::flagcells::{
    cell_form, cell_sum_poly, enumerate_flags, enumerate_gl, flag_count_group_formula, free_positions,
    is_parabolic_member, mat_inverse, mat_mul, phi_flag, sigma_stats, tau_for_lambda, theta_word, FpMatrix,
    OrderedSetPartition,
};
use crate::inversions::{
    enumerate_words, full_mahonian, inv_bounds, inversion_distribution_oracle, log_concavity_scan, mahonian_table,
    refinement_recurrence, MultisetWord,
};
use crate::qanalogue::{
    binomial, multiset_sum_poly, partition_counts, q_binomial, q_binomial_by_quotient, q_multinomial, FlagShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    QAnalogue,
    Inversions,
    Denumerant,
    FlagCells,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::QAnalogue => "qanalogue",
            Suite::Inversions => "inversions",
            Suite::Denumerant => "denumerant",
            Suite::FlagCells => "flagcells",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::QAnalogue, Suite::Inversions, Suite::Denumerant, Suite::FlagCells],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::QAnalogue, Suite::Inversions, Suite::Denumerant, Suite::FlagCells, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 6,
            cap: crate::DEFAULT_CAP,
        }
    }
}

type Outcome = std::result::Result<String, String>;
type Check = fn(&VerifyConfig) -> Outcome;

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shapes_up_to(max_n: usize) -> impl Iterator<Item = FlagShape> {
    (1..=max_n).flat_map(FlagShape::all)
}

/// Runs `suite` and returns one outcome per check, in a fixed order.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let checks: Vec<(&'static str, &'static str, Check)> = suite
        .members()
        .into_iter()
        .flat_map(|s| checks_for(s).into_iter().map(move |(name, f)| (s.name(), name, f)))
        .collect();
    checks
        .par_iter()
        .map(|&(suite, name, f)| {
            let (passed, detail) = match f(cfg) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                suite,
                name,
                passed,
                detail,
            }
        })
        .collect()
}

fn checks_for(suite: Suite) -> Vec<(&'static str, Check)> {
    match suite {
        Suite::QAnalogue => vec![
            ("recurrence-vs-quotient", check_recurrence_vs_quotient),
            ("binomial-symmetry", check_binomial_symmetry),
            ("multinomial-degree-and-value", check_multinomial_degree),
            ("bounded-partitions", check_bounded_partitions),
            ("multiset-sums", check_multiset_sums),
        ],
        Suite::Inversions => vec![
            ("word-oracle", check_word_oracle),
            ("merge-vs-naive", check_merge_vs_naive),
            ("symmetry-positivity", check_table_symmetry),
            ("row-sum-recurrence", check_row_sums),
            ("refinement", check_refinement),
            ("bound-signs", check_bound_signs),
            ("full-log-concavity", check_full_log_concavity),
        ],
        Suite::Denumerant => vec![
            ("psi-methods", check_psi_methods),
            ("psi-symmetry-bound", check_psi_symmetry),
            ("divisor-sum-forms", check_divisor_forms),
            ("signed-subset-identity", check_signed_subset),
            ("convolution-routes", check_convolution_routes),
            ("binomial-route", check_binomial_route),
            ("all-ones-weights", check_all_ones),
            ("quasipolynomial", check_quasipolynomial),
            ("denumerant-bounds", check_denumerant_bounds),
        ],
        Suite::FlagCells => vec![
            ("counting-triangle", check_counting_triangle),
            ("cell-decomposition", check_cell_decomposition),
            ("coset-law", check_coset_law),
            ("theta-bijection", check_theta),
            ("cell-sums", check_cell_sums),
            ("tau", check_tau),
        ],
        Suite::All => Vec::new(),
    }
}

fn check_recurrence_vs_quotient(cfg: &VerifyConfig) -> Outcome {
    let top = 2 * cfg.max_n + 2;
    for n in 0..=top {
        for e in 0..=n {
            ensure(lib(q_binomial(n, e))? == lib(q_binomial_by_quotient(n, e))?, || {
                format!("mismatch at n={n} e={e}")
            })?;
        }
    }
    Ok(format!("0 <= e <= n <= {top}"))
}

fn check_binomial_symmetry(cfg: &VerifyConfig) -> Outcome {
    let top = 2 * cfg.max_n + 2;
    for n in 0..=top {
        for e in 0..=n {
            let b = lib(q_binomial(n, e))?;
            ensure(lib(b.reverse(e * (n - e)))? == b, || format!("not palindromic at n={n} e={e}"))?;
            ensure(b == lib(q_binomial(n, n - e))?, || format!("not symmetric at n={n} e={e}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_multinomial_degree(cfg: &VerifyConfig) -> Outcome {
    let mut count = 0;
    for s in shapes_up_to(cfg.max_n) {
        let q = q_multinomial(&s);
        ensure(q.degree() == Some(s.nu()), || format!("degree of {s}"))?;
        ensure(q.eval_i64(1) == BigInt::from(s.multinomial()), || format!("value at 1 of {s}"))?;
        count += 1;
    }
    Ok(format!("{count} shapes"))
}

fn check_bounded_partitions(cfg: &VerifyConfig) -> Outcome {
    let top = 2 * cfg.max_n + 2;
    for n in 0..=top {
        for e in 0..=n {
            let b = lib(q_binomial(n, e))?;
            let counts = partition_counts(e, n - e, e * (n - e));
            for (m, c) in counts.iter().enumerate() {
                ensure(b.coeff(m) == BigInt::from(c.clone()), || format!("n={n} e={e} m={m}"))?;
            }
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_multiset_sums(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(10);
    for n in 0..=top {
        for e in 0..=n {
            let (poly, _) = lib(multiset_sum_poly(e, n - e, cfg.cap))?;
            ensure(poly == lib(q_binomial(n, e))?, || format!("n={n} e={e}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_word_oracle(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(8);
    let mut count = 0;
    for s in shapes_up_to(top) {
        ensure(lib(inversion_distribution_oracle(&s, cfg.cap))? == q_multinomial(&s), || {
            format!("{s}")
        })?;
        count += 1;
    }
    Ok(format!("{count} shapes, n <= {top}"))
}

fn check_merge_vs_naive(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(8);
    let mut words = 0u64;
    for s in shapes_up_to(top) {
        for w in lib(enumerate_words(&s, cfg.cap))? {
            ensure(w.inversions() == w.inversions_naive(), || format!("{w}"))?;
            words += 1;
        }
    }
    Ok(format!("{words} words"))
}

fn check_table_symmetry(cfg: &VerifyConfig) -> Outcome {
    for s in shapes_up_to(cfg.max_n + 2) {
        let t = mahonian_table(&s);
        let nu = s.nu();
        for k in 0..=nu {
            ensure(t.get(k) == t.get(nu - k), || format!("symmetry of {s} at k={k}"))?;
            ensure(!t.get(k).is_zero(), || format!("zero count for {s} at k={k}"))?;
        }
    }
    Ok(format!("n <= {}", cfg.max_n + 2))
}

fn check_row_sums(cfg: &VerifyConfig) -> Outcome {
    let top = 2 * cfg.max_n;
    for n in 2..=top {
        let prev = lib(full_mahonian(n - 1))?;
        let cur = lib(full_mahonian(n))?;
        let nk = n * (n - 1) / 2;
        for k in 0..=nk {
            let sum: BigUint = (k.saturating_sub(n - 1)..=k).map(|j| prev.get(j)).sum();
            ensure(sum == cur.get(k), || format!("n={n} k={k}"))?;
            ensure(cur.get(k) == cur.get(nk - k), || format!("symmetry n={n} k={k}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_refinement(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(7);
    let mut pairs = 0;
    for n in 1..=top {
        let shapes = FlagShape::all(n);
        for s in &shapes {
            for fine in shapes.iter().filter(|f| s.is_refined_by(f)) {
                let rec = lib(refinement_recurrence(s, fine))?;
                let want = mahonian_table(s);
                ensure(rec.table == want, || format!("{s} from {fine}"))?;
                let fine_t = mahonian_table(fine);
                ensure((0..=s.nu()).all(|k| want.get(k) <= fine_t.get(k)), || {
                    format!("monotonicity {s} vs {fine}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn check_bound_signs(cfg: &VerifyConfig) -> Outcome {
    let mut cases = 0;
    for s in shapes_up_to(cfg.max_n).filter(|s| s.n() >= 3 && s.eta() >= 1) {
        for k in 2..=s.nu() {
            let (lo, _) = inv_bounds(&s, k);
            ensure(lo.cmp_integer(&BigInt::zero()).is_le(), || format!("lower bound {lo} > 0 for {s} k={k}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn check_full_log_concavity(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(10);
    for n in 2..=top {
        let seq = lib(full_mahonian(n))?.as_signed();
        let fails = log_concavity_scan(&seq);
        ensure(fails.is_empty(), || format!("n={n} fails at {fails:?}"))?;
    }
    Ok(format!("2 <= n <= {top}"))
}

fn check_psi_methods(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(2);
    for n in 1..=top {
        let table = PsiTable::new(n);
        let exp_log = lib(psi_exp_log_table(n))?;
        ensure(exp_log == table.values(), || format!("exp-log table n={n}"))?;
        let nn = (n * (n + 1) / 2) as i64;
        for r in 0..=nn {
            let want = table.get(r);
            let subset = lib(psi(n, r, PsiMethod::SubsetOracle, cfg.cap))?;
            ensure(subset == want, || format!("subset n={n} r={r}"))?;
            ensure(lib(psi(n, r, PsiMethod::FnCoefficients, cfg.cap))? == want, || format!("fn n={n} r={r}"))?;
            if (1..=n as i64).contains(&r) {
                ensure(lib(psi(n, r, PsiMethod::Pentagonal, cfg.cap))? == want, || {
                    format!("pentagonal n={n} r={r}")
                })?;
            }
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_psi_symmetry(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(12);
    for n in 1..=top {
        let t = PsiTable::new(n);
        let nn = (n * (n + 1) / 2) as i64;
        for r in 0..=nn {
            let mirrored = t.get(nn - r);
            let expected = if n % 2 == 0 { mirrored } else { -mirrored };
            ensure(t.get(r) == expected, || format!("symmetry n={n} r={r}"))?;
            let bound = BigInt::from(binomial(n - 1 + r as usize, n - 1));
            ensure(t.get(r).abs() <= bound, || format!("binomial bound n={n} r={r}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_divisor_forms(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(15);
    for n in 1..=top {
        for k in 1..=120 {
            ensure(lib(restricted_divisor_sum(n, k))? == lib(restricted_divisor_sum_floor(n, k))?, || {
                format!("n={n} k={k}")
            })?;
        }
    }
    Ok(format!("n <= {top}, k <= 120"))
}

fn identity_weight_vectors() -> Result<Vec<WeightVector>> {
    Ok(vec![
        WeightVector::ones(4)?,
        WeightVector::new(vec![1, 2, 3])?,
        WeightVector::new(vec![2, 3])?,
        epsilon_weights(&FlagShape::new(5, vec![2])?),
    ])
}

fn check_signed_subset(_: &VerifyConfig) -> Outcome {
    for w in lib(identity_weight_vectors())? {
        for r in 0..=4 {
            ensure(signed_subset_identity_check(r, &w, 30), || format!("r={r} w={:?}", w.weights()))?;
        }
    }
    Ok("r <= 4, order 30".into())
}

fn check_convolution_routes(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(7);
    for s in shapes_up_to(top) {
        let t = mahonian_table(&s);
        for k in 0..=s.nu() + 2 {
            ensure(mahonian_via_denumerant(&s, k) == t.get(k), || format!("psi route {s} k={k}"))?;
            ensure(lib(mahonian_via_denumerant_subsets(&s, k, cfg.cap))? == t.get(k), || {
                format!("subset route {s} k={k}")
            })?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_binomial_route(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(10);
    for n in 1..=top {
        let t = lib(full_mahonian(n))?;
        let nk = n * (n - 1) / 2;
        let g = full_mahonian_series(n, nk + 2);
        for k in 0..=nk + 2 {
            ensure(lib(full_mahonian_via_binomials(n, k))? == t.get(k), || format!("n={n} k={k}"))?;
            ensure(g.coeff(k as i64) == BigInt::from(t.get(k)), || format!("series n={n} k={k}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_all_ones(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(6);
    for n in 1..=top {
        let w = lib(WeightVector::ones(n))?;
        for m in 0..=30usize {
            ensure(denumerant(&w, m as i64) == binomial(n - 1 + m, n - 1), || format!("n={n} m={m}"))?;
        }
    }
    Ok(format!("n <= {top}, m <= 30"))
}

fn check_quasipolynomial(_: &VerifyConfig) -> Outcome {
    for w in [vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
        let wv = lib(WeightVector::new(w.clone()))?;
        ensure(quasipolynomial_check(&wv, 0, 40), || format!("w={w:?}"))?;
    }
    Ok("(1,2), (2,3), (1,2,3)".into())
}

fn check_denumerant_bounds(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(6);
    for s in shapes_up_to(top) {
        let w = epsilon_weights(&s);
        for m in 0..=30usize {
            let d = BigInt::from(denumerant(&w, m as i64));
            let (lo, up) = denumerant_bounds(&s, m);
            ensure(lo.cmp_integer(&d).is_le() && up.cmp_integer(&d).is_ge(), || {
                format!("{s} m={m}: {lo} <= {d} <= {up}")
            })?;
        }
    }
    Ok(format!("n <= {top}, m <= 30"))
}

fn check_counting_triangle(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(4);
    let mut cases = 0;
    for s in shapes_up_to(top) {
        let cells = lib(cell_sum_poly(&s, false, cfg.cap))?;
        for p in [2u64, 3] {
            let flags = lib(enumerate_flags(&s, p, cfg.cap))?.len();
            let group = lib(flag_count_group_formula(&s, p))?;
            let q = q_multinomial(&s).eval_i64(p as i64);
            let c = cells.eval_i64(p as i64);
            ensure(
                BigUint::from(flags) == group && BigInt::from(group.clone()) == q && q == c,
                || format!("{s} p={p}: {flags} {group} {q} {c}"),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{cases} shape/prime pairs"))
}

/// Exhaustive over `GL(3, F_2)` for every shape with `n = 3`.
fn check_cell_decomposition(cfg: &VerifyConfig) -> Outcome {
    if cfg.max_n < 3 {
        return Ok("skipped (max-n < 3)".into());
    }
    let gl = lib(enumerate_gl(3, 2, cfg.cap))?;
    for s in FlagShape::all(3) {
        lib(cell_decomposition_report(&s, &gl))?.map_err(|e| format!("{s}: {e}"))?;
    }
    Ok(format!("{} matrices", gl.len()))
}

/// Checks the cell decomposition of `GL(n, F_p)` for `shape` on the given
/// group elements. The outer error is a library failure, the inner one a
/// mismatch.
pub fn cell_decomposition_report(
    shape: &FlagShape,
    gl: &[FpMatrix],
) -> Result<std::result::Result<usize, String>> {
    let p = match gl.first() {
        Some(m) => m.modulus(),
        None => return Ok(Err("empty group".into())),
    };
    let mut forms: BTreeMap<FpMatrix, Vec<usize>> = BTreeMap::new();
    for anti in [false, true] {
        forms.clear();
        for (idx, a) in gl.iter().enumerate() {
            let dec = cell_form(a, shape, anti)?;
            if mat_mul(a, &dec.transform)? != dec.form.matrix {
                return Ok(Err(format!("A g != B for matrix {idx}")));
            }
            if !is_parabolic_member(&dec.transform, shape) {
                return Ok(Err(format!("g not parabolic for matrix {idx}")));
            }
            if !dec.form.matches_pattern() {
                return Ok(Err(format!("pattern violated for matrix {idx}")));
            }
            let lambda = sigma_stats(&dec.form.sigma).lambda;
            if !anti && dec.form.dimension() != lambda {
                return Ok(Err(format!("free entries != lambda for matrix {idx}")));
            }
            let again = cell_form(&dec.form.matrix, shape, anti)?;
            if again.form != dec.form || again.transform != FpMatrix::identity(p, shape.n())? {
                return Ok(Err(format!("not idempotent for matrix {idx}")));
            }
            forms.entry(dec.form.matrix).or_default().push(idx);
        }
        let expected = BigInt::from(flag_count_group_formula(shape, p)?);
        if BigInt::from(forms.len()) != expected {
            return Ok(Err(format!("{} forms, expected {expected}", forms.len())));
        }
        // same form <=> same coset: members of a class differ by P, and
        // representatives of distinct classes do not
        let reps: Vec<&FpMatrix> = forms.values().map(|v| &gl[v[0]]).collect();
        for members in forms.values() {
            let base_inv = mat_inverse(&gl[members[0]])?;
            for &m in members {
                if !is_parabolic_member(&mat_mul(&base_inv, &gl[m])?, shape) {
                    return Ok(Err("same form but different coset".into()));
                }
            }
        }
        for (i, a) in reps.iter().enumerate() {
            let inv = mat_inverse(a)?;
            for b in reps.iter().skip(i + 1) {
                if is_parabolic_member(&mat_mul(&inv, b)?, shape) {
                    return Ok(Err("different forms but same coset".into()));
                }
            }
        }
        // cells of sigma hold p^dim cosets
        let mut per_sigma: BTreeMap<OrderedSetPartition, usize> = BTreeMap::new();
        for m in forms.keys() {
            let dec = cell_form(m, shape, anti)?;
            *per_sigma.entry(dec.form.sigma).or_default() += 1;
        }
        for (sigma, count) in &per_sigma {
            let dim = free_positions(sigma, anti).len() as u32;
            if *count as u64 != p.pow(dim) {
                return Ok(Err(format!("cell {sigma} has {count} cosets, expected {p}^{dim}")));
            }
        }
    }
    Ok(Ok(forms.len()))
}

/// `Phi(A) = Phi(B)` exactly when `B^{-1} A` is parabolic, over all pairs
/// of `GL(3, F_2)`.
fn check_coset_law(cfg: &VerifyConfig) -> Outcome {
    if cfg.max_n < 3 {
        return Ok("skipped (max-n < 3)".into());
    }
    let gl = lib(enumerate_gl(3, 2, cfg.cap))?;
    let inverses: Vec<FpMatrix> = lib(gl.iter().map(mat_inverse).collect())?;
    for s in FlagShape::all(3) {
        let flags: Vec<_> = lib(gl.iter().map(|a| phi_flag(a, &s)).collect())?;
        for (i, a) in gl.iter().enumerate() {
            for (j, b_inv) in inverses.iter().enumerate() {
                let same = flags[i] == flags[j];
                let parabolic = is_parabolic_member(&lib(mat_mul(b_inv, a))?, &s);
                ensure(same == parabolic, || format!("{s}: pair ({i}, {j})"))?;
            }
        }
    }
    Ok(format!("{} pairs per shape", gl.len() * gl.len()))
}

fn check_theta(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(7);
    for s in shapes_up_to(top) {
        let parts = lib(OrderedSetPartition::all(&s, cfg.cap))?;
        let words: BTreeSet<MultisetWord> = parts.iter().map(theta_word).collect();
        ensure(BigUint::from(words.len()) == s.multinomial() && words.len() == parts.len(), || {
            format!("not bijective for {s}")
        })?;
        for sigma in &parts {
            ensure(theta_word(sigma).inversions() as usize == sigma_stats(sigma).lambda, || {
                format!("inv != lambda at {sigma}")
            })?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn check_cell_sums(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.min(7);
    for s in shapes_up_to(top) {
        let straight = lib(cell_sum_poly(&s, false, cfg.cap))?;
        let anti = lib(cell_sum_poly(&s, true, cfg.cap))?;
        ensure(straight == anti && straight == q_multinomial(&s), || format!("{s}"))?;
    }
    Ok(format!("n <= {top}"))
}

fn check_tau(cfg: &VerifyConfig) -> Outcome {
    let top = cfg.max_n.max(8);
    for n in 2..=top {
        for d1 in 1..n {
            for k in 0..=d1 * (n - d1) {
                let tau = lib(tau_for_lambda(n, d1, k))?;
                ensure(sigma_stats(&tau).lambda == k, || format!("n={n} d1={d1} k={k}"))?;
            }
        }
    }
    Ok(format!("n <= {top}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::QAnalogue, Suite::Inversions, Suite::Denumerant, Suite::FlagCells, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig { max_n: 3, cap: 1 << 20 };
        let out = run_suite(Suite::All, &cfg);
        let failed: Vec<_> = out.iter().filter(|o| !o.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(out.len(), 27);
    }
}
