//! Exact evaluation of the bounds on `n(r, d+1, Δ)`.
//!
//! `n(r, D, Δ)` is the largest `n` such that some `r`-partite graph with
//! classes of size at least `n` and maximum degree `Δ` has no
//! `(r-D+1)`-IT. Every quantity here is an exact rational or an integer
//! obtained by flooring one; nothing touches floating point.
//!
//! [`summary`] combines the lower bounds (explicit constructions) and upper
//! bounds (the degree thresholds) that apply to a parameter triple, and tags
//! each value with the names of the results that attain it.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Exact rational with `i64` parts, always kept in reduced form.
pub type Rat = Ratio<i64>;

fn rat(x: u64) -> Rat {
    Rat::from_integer(x as i64)
}

fn frac(a: u64, b: u64) -> Rat {
    Rat::new(a as i64, b as i64)
}

fn floor_u(x: Rat) -> u64 {
    let f = x.floor().to_integer();
    u64::try_from(f.max(0)).expect("nonnegative")
}

fn ceil_u(x: Rat) -> u64 {
    let c = x.ceil().to_integer();
    u64::try_from(c.max(0)).expect("nonnegative")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("need at least 2 classes, got r={0}")]
    TooFewClasses(u64),
    #[error("defect d={d} must be below r={r}")]
    DefectTooLarge { r: u64, d: u64 },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("scale c={0} is below 1")]
    ScaleBelowOne(Rat),
    #[error("extension size {k} must be below r-d={limit}")]
    ExtensionOutOfRange { k: u64, limit: u64 },
}

fn hypothesis(msg: impl Into<String>) -> BoundsError {
    BoundsError::Hypothesis(msg.into())
}

/// `r = q(d+1) + k` with `0 <= k <= d`, together with `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub r: u64,
    pub d: u64,
    pub delta: u64,
    pub q: u64,
    pub k: u64,
}

/// Splits `r = q(d+1) + k` with `0 <= k <= d`.
pub fn decompose(r: u64, d: u64) -> Result<(u64, u64), BoundsError> {
    if r < 2 {
        return Err(BoundsError::TooFewClasses(r));
    }
    if d >= r {
        return Err(BoundsError::DefectTooLarge { r, d });
    }
    Ok((r / (d + 1), r % (d + 1)))
}

impl Params {
    pub fn new(r: u64, d: u64, delta: u64) -> Result<Self, BoundsError> {
        let (q, k) = decompose(r, d)?;
        Ok(Params { r, d, delta, q, k })
    }

    fn two_delta(&self) -> Rat {
        rat(2 * self.delta)
    }

    fn q_odd_at_least_3(&self) -> bool {
        self.q >= 3 && self.q % 2 == 1
    }
}

/// The known value of `n(r, 1, Δ)`: `⌊2Δ(1-1/r)⌋` for even `r` and
/// `⌊2Δ(1-1/(r-1))⌋` for odd `r`.
pub fn nr_formula(r: u64, delta: u64) -> u64 {
    assert!(r >= 2, "nr_formula needs r >= 2");
    let s = if r.is_multiple_of(2) { r } else { r - 1 };
    floor_u(rat(2 * delta) * (Rat::ONE - frac(1, s)))
}

/// `2Δ(1 - (d+1)/r)`.
pub fn upper_defect(p: &Params) -> Rat {
    p.two_delta() * (Rat::ONE - frac(p.d + 1, p.r))
}

/// `max{2Δ(1 - (4d+5)/(4r)), 2Δ(1 - 1/q)}`.
pub fn upper_genbound(p: &Params) -> Rat {
    let a = p.two_delta() * (Rat::ONE - frac(4 * p.d + 5, 4 * p.r));
    let b = p.two_delta() * (Rat::ONE - frac(1, p.q));
    a.max(b)
}

/// `max{2Δ(1 - (4d+5)/(4r)), 2Δ(1 - q/(q²-1))}`, for `r = q(d+1)` with odd
/// `q >= 3`.
pub fn upper_odd_q(p: &Params) -> Result<Rat, BoundsError> {
    if p.k != 0 {
        return Err(hypothesis(format!("r=q(d+1) required, but k={}", p.k)));
    }
    if !p.q_odd_at_least_3() {
        return Err(hypothesis(format!("q must be odd and at least 3, got q={}", p.q)));
    }
    let a = p.two_delta() * (Rat::ONE - frac(4 * p.d + 5, 4 * p.r));
    let b = p.two_delta() * (Rat::ONE - frac(p.q, p.q * p.q - 1));
    Ok(a.max(b))
}

/// `max{2Δ(1 - (6d+7)/(6r)), 2Δ(1 - 1/(q-1))}`, for odd `q >= 3`.
pub fn upper_odd_q_general(p: &Params) -> Result<Rat, BoundsError> {
    if !p.q_odd_at_least_3() {
        return Err(hypothesis(format!("q must be odd and at least 3, got q={}", p.q)));
    }
    let a = p.two_delta() * (Rat::ONE - frac(6 * p.d + 7, 6 * p.r));
    let b = p.two_delta() * (Rat::ONE - frac(1, p.q - 1));
    Ok(a.max(b))
}

/// Exact `n(r, d+1, Δ) = ⌊2Δ(1-1/q)⌋` when `q` is even and `q >= 4k`.
pub fn cor_small_k_value(p: &Params) -> Result<u64, BoundsError> {
    if !p.q.is_multiple_of(2) {
        return Err(hypothesis(format!("q must be even, got q={}", p.q)));
    }
    if p.q < 4 * p.k {
        return Err(hypothesis(format!("q >= 4k required, got q={} k={}", p.q, p.k)));
    }
    Ok(floor_u(p.two_delta() * (Rat::ONE - frac(1, p.q))))
}

/// Exact `n(r, d+1, Δ) = ⌊2Δ(1-1/(q-1))⌋` when `q` is odd and
/// `q >= 6d + 6k + 7`.
pub fn cor_odd_q_tight_value(p: &Params) -> Result<u64, BoundsError> {
    if p.q % 2 != 1 {
        return Err(hypothesis(format!("q must be odd, got q={}", p.q)));
    }
    if p.q < 6 * p.d + 6 * p.k + 7 {
        return Err(hypothesis(format!(
            "q >= 6d+6k+7 required, got q={} d={} k={}",
            p.q, p.d, p.k
        )));
    }
    Ok(floor_u(p.two_delta() * (Rat::ONE - frac(1, p.q - 1))))
}

/// Checks the hypotheses of the main construction for `r = q(d+i) + k`.
pub fn main_construction_check(q: u64, i: u64, d: u64, k: u64) -> Result<(), BoundsError> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(hypothesis(format!("q must be even and at least 2, got q={q}")));
    }
    if i < 1 || i > d + 2 {
        return Err(hypothesis(format!("1 <= i <= d+2 required, got i={i} d={d}")));
    }
    if k >= d + i {
        return Err(hypothesis(format!("k < d+i required, got k={k} d+i={}", d + i)));
    }
    if i > 1 && !(d + i).is_multiple_of(i - 1) {
        return Err(hypothesis(format!("i-1={} must divide d+i={}", i - 1, d + i)));
    }
    Ok(())
}

/// `⌊2Δ(1-1/q)⌋ + ⌊(i-1)Δ/((d+1)q)⌋`, a lower bound on `n(q(d+i)+k, d+1, Δ)`.
pub fn main_construction_value(
    q: u64,
    i: u64,
    d: u64,
    k: u64,
    delta: u64,
) -> Result<u64, BoundsError> {
    main_construction_check(q, i, d, k)?;
    let base = floor_u(rat(2 * delta) * (Rat::ONE - frac(1, q)));
    Ok(base + (i - 1) * delta / ((d + 1) * q))
}

/// Best main-construction value over all admissible `(q, i, k)` for the
/// given `r` and `d`.
pub fn best_main_construction(r: u64, d: u64, delta: u64) -> Option<u64> {
    let mut best = None;
    for i in 1..=d + 2 {
        let block = d + i;
        let mut q = 2;
        while q * block <= r {
            let k = r - q * block;
            if let Ok(v) = main_construction_value(q, i, d, k, delta) {
                best = best.max(Some(v));
            }
            q += 2;
        }
    }
    best
}

/// Conversions between `n(r, d+1, Δ)`, `Δ(n, r, r-d)` and `f(n, r, r-d)`
/// when `n(r, d+1, Δ) = ⌊cΔ⌋` for a fixed scale `c >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale(Rat);

impl Scale {
    pub fn new(c: Rat) -> Result<Self, BoundsError> {
        if c < Rat::ONE {
            return Err(BoundsError::ScaleBelowOne(c));
        }
        Ok(Scale(c))
    }

    pub fn value(&self) -> Rat {
        self.0
    }

    /// `⌊cΔ⌋`.
    pub fn n_value(&self, delta: u64) -> u64 {
        floor_u(self.0 * rat(delta))
    }

    /// `⌈n/c⌉`.
    pub fn delta_value(&self, n: u64) -> u64 {
        ceil_u(rat(n) / self.0)
    }

    /// `(r-1)n - ⌈n/c⌉`.
    pub fn f_value(&self, n: u64, r: u64) -> u64 {
        (r - 1) * n - self.delta_value(n)
    }
}

/// Threshold per unit `Δ` for extending a `k`-IT to an `(r-d)`-IT:
/// `2(1 - (d+1-k/2)/(r-k))`.
pub fn extension_bound(r: u64, d: u64, k: u64) -> Result<Rat, BoundsError> {
    decompose(r, d)?;
    if k >= r - d {
        return Err(BoundsError::ExtensionOutOfRange { k, limit: r - d });
    }
    let num = rat(d + 1) - frac(k, 2);
    Ok(rat(2) * (Rat::ONE - num / rat(r - k)))
}

/// Lower bounds on `n(r', D, Δ)` for every `2 <= r' <= max_r` and
/// `1 <= D < r'`, obtained by chaining the construction operators from the
/// known values of `n(r', 1, Δ)`.
///
/// The transitions are: adding a copy of `K_r(⌊Δ/(r-1)⌋)` (defect down by
/// one), disjoint copies, rows with a spine, the three-layer operator, adding
/// an isolated class, and raising the defect.
#[derive(Debug, Clone)]
pub struct LowerTable {
    delta: u64,
    max_r: u64,
    cells: Vec<Vec<Option<(u64, &'static str)>>>,
}

impl LowerTable {
    pub fn new(max_r: u64, delta: u64) -> Self {
        let size = max_r as usize + 1;
        let mut t = LowerTable {
            delta,
            max_r,
            cells: vec![vec![None; size]; size],
        };
        for r in 2..=max_r {
            t.improve(r, 1, nr_formula(r, delta), "nr-formula");
            if r > 2 {
                for dd in 1..r - 1 {
                    if let Some((v, _)) = t.get(r - 1, dd) {
                        t.improve(r, dd, v, "padding");
                    }
                }
            }
            for r0 in 2..r {
                if r % r0 == 0 {
                    t.lift(r0, r / r0);
                }
            }
            for dd in (1..r).rev() {
                if let Some((v, _)) = t.get(r, dd) {
                    if dd > 1 {
                        t.improve(r, dd - 1, v + delta / (r - 1), "add-kr");
                        t.improve(r, dd - 1, v, "defect-monotone");
                    }
                }
            }
        }
        t
    }

    fn lift(&mut self, r0: u64, m: u64) {
        let r = r0 * m;
        let delta = self.delta;
        for dd in 1..r0 {
            let Some((v, _)) = self.get(r0, dd) else {
                continue;
            };
            self.improve(r, m * dd, v, "copies");
            for l in 2..=m {
                if !m.is_multiple_of(l) {
                    continue;
                }
                let j = m / l;
                let medium = delta / ((l - 1) * r0);
                self.improve(r, (m - j) * dd, v + medium, "rows-spine");
                if m > j + 1 {
                    let small = delta / ((m - 1) * r0);
                    self.improve(r, (m - j - 1) * dd, v + medium + small, "three-layer");
                }
            }
        }
    }

    fn improve(&mut self, r: u64, dd: u64, v: u64, tag: &'static str) {
        if dd == 0 || dd >= r {
            return;
        }
        let cell = &mut self.cells[r as usize][dd as usize];
        if cell.is_none_or(|(old, _)| v > old) {
            *cell = Some((v, tag));
        }
    }

    /// Lower bound on `n(r, dd, Δ)` and the last operator used to reach it.
    pub fn get(&self, r: u64, dd: u64) -> Option<(u64, &'static str)> {
        if r > self.max_r || dd == 0 || dd >= r {
            return None;
        }
        self.cells[r as usize][dd as usize]
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }
}

/// Best known lower and upper bounds on `n(r, d+1, Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: Params,
    pub lower: u64,
    pub lower_tags: Vec<&'static str>,
    pub upper: u64,
    pub upper_tags: Vec<&'static str>,
    pub exact: bool,
}

fn extreme(
    candidates: &[(u64, &'static str)],
    pick: fn(u64, u64) -> bool,
) -> (u64, Vec<&'static str>) {
    let mut best = candidates[0].0;
    for &(v, _) in candidates {
        if pick(v, best) {
            best = v;
        }
    }
    let tags = candidates
        .iter()
        .filter(|&&(v, _)| v == best)
        .map(|&(_, t)| t)
        .collect();
    (best, tags)
}

/// [`summary`] reusing a precomputed [`LowerTable`] (which must cover `r` and
/// have the same `Δ`).
pub fn summary_with(p: &Params, table: &LowerTable) -> BoundReport {
    assert_eq!(table.delta(), p.delta, "table built for a different delta");
    let mut lower = vec![];
    if p.d == 0 {
        lower.push((nr_formula(p.r, p.delta), "nr-formula"));
    }
    if let Some(v) = best_main_construction(p.r, p.d, p.delta) {
        lower.push((v, "main-construction"));
    }
    if 2 * (p.d + 1) <= p.r {
        lower.push((p.delta, "blocks"));
    }
    if let Some((v, _)) = table.get(p.r, p.d + 1) {
        lower.push((v, "construction-chain"));
    }
    if lower.is_empty() {
        lower.push((0, "trivial"));
    }

    let mut upper = vec![
        (floor_u(upper_defect(p)), "defect-bound"),
        (floor_u(upper_genbound(p)), "genbound"),
    ];
    if let Ok(v) = upper_odd_q(p) {
        upper.push((floor_u(v), "odd-q-k0"));
    }
    if let Ok(v) = upper_odd_q_general(p) {
        upper.push((floor_u(v), "odd-q"));
    }
    if p.d == 0 {
        upper.push((nr_formula(p.r, p.delta), "nr-formula"));
    }

    let (lo, lower_tags) = extreme(&lower, |a, b| a > b);
    let (hi, upper_tags) = extreme(&upper, |a, b| a < b);
    BoundReport {
        params: *p,
        lower: lo,
        lower_tags,
        upper: hi,
        upper_tags,
        exact: lo == hi,
    }
}

/// Best known bounds on `n(r, d+1, Δ)`.
///
/// Lower candidates, in order: the known `d = 0` value, the main
/// construction, the bipartite blocks (when `2(d+1) <= r`), and the operator
/// chains of [`LowerTable`]. Upper candidates, in order: the defect bound,
/// the general bound, the two odd-`q` bounds where their hypotheses hold, and
/// the known `d = 0` value. The report keeps the best value on each side with
/// every tag that attains it.
pub fn summary(r: u64, d: u64, delta: u64) -> Result<BoundReport, BoundsError> {
    let p = Params::new(r, d, delta)?;
    Ok(summary_with(&p, &LowerTable::new(r, delta)))
}

/// Reports for every valid `(r, d)` with `r <= max_r`, `d <= max_d`, at one
/// `Δ`, ordered by `(r, d)`.
pub fn summary_grid(max_r: u64, max_d: u64, delta: u64) -> Vec<BoundReport> {
    let table = LowerTable::new(max_r, delta);
    let mut out = vec![];
    for r in 2..=max_r {
        for d in 0..=max_d.min(r - 1) {
            let p = Params::new(r, d, delta).expect("valid by loop bounds");
            out.push(summary_with(&p, &table));
        }
    }
    out
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n({}, {}, {}): lower {} [{}], upper {} [{}]{}",
            self.params.r,
            self.params.d + 1,
            self.params.delta,
            self.lower,
            self.lower_tags.join("+"),
            self.upper,
            self.upper_tags.join("+"),
            if self.exact { ", exact" } else { "" }
        )
    }
}

const HEADER: [&str; 10] = [
    "r", "d", "delta", "q", "k", "lower", "lower_source", "upper", "upper_source", "exact",
];

fn row(rep: &BoundReport) -> [String; 10] {
    let p = &rep.params;
    [
        p.r.to_string(),
        p.d.to_string(),
        p.delta.to_string(),
        p.q.to_string(),
        p.k.to_string(),
        rep.lower.to_string(),
        rep.lower_tags.join("+"),
        rep.upper.to_string(),
        rep.upper_tags.join("+"),
        if rep.exact { "yes" } else { "no" }.to_string(),
    ]
}

/// Markdown table, one row per report.
pub fn render_markdown(reports: &[BoundReport]) -> String {
    let mut out = format!("| {} |\n", HEADER.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(HEADER.len())));
    for rep in reports {
        out.push_str(&format!("| {} |\n", row(rep).join(" | ")));
    }
    out
}

/// CSV with a header row and LF line endings.
pub fn render_csv(reports: &[BoundReport]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(HEADER).expect("in-memory write");
    for rep in reports {
        w.write_record(row(rep)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}
