//! Extremal constructions as composable recipes.
//!
//! A [`Recipe`] is a tree of base graphs and operators. Each node carries a
//! [`Claim`] `(r, D, n, Δ)`: the graph has `r` classes of size at least `n`,
//! maximum degree at most `Δ`, and no partial IT larger than `r - D`.
//! [`build`] produces the graph together with its claim and [`certify`]
//! re-checks the claim with the exact solver.
//!
//! Multi-row operators lay row `a` of an `m`-row result out on classes
//! `[a·r₀, (a+1)·r₀)`, where `r₀` is the child's class count. Layer vertices
//! (spine, medium, small) are appended after the child's vertices in every
//! class, the same number in each class.

mod text;

pub use text::{parse_claim_sidecar, parse_recipe, RecipeParseError};

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::bounds::{main_construction_check, nr_formula, BoundsError, Rat};
use crate::budget::{Budget, BudgetExhausted};
use crate::graph::{GraphBuilder, GraphError, MultipartiteGraph, ParseError, VertexRef};
use crate::solver::{max_partial_it_with_budget, Transversal};

/// Whether a claim has been checked by the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    /// Follows from the recipe (or is supplied with a file) but has not been
    /// checked.
    Trusted,
    /// Checked by [`certify`] with an exhaustive search.
    Certified,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Trusted => "trusted",
            ClaimStatus::Certified => "certified",
        })
    }
}

/// `r` classes of size at least `n`, maximum degree at most `delta`, and no
/// partial IT with more than `r - defect` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claim {
    pub r: usize,
    pub defect: usize,
    pub n: usize,
    pub delta: usize,
}

impl Claim {
    /// Largest partial IT the claim allows.
    pub fn max_it_allowed(&self) -> usize {
        self.r.saturating_sub(self.defect)
    }

    /// Sidecar text: `claim 1`, then `r`, `defect`, `n`, `delta`, `status`,
    /// and, once certified, the measured maximum partial IT.
    pub fn sidecar(&self, status: ClaimStatus, measured: Option<usize>) -> String {
        let mut out = format!(
            "claim 1\nr {}\ndefect {}\nn {}\ndelta {}\nstatus {status}\n",
            self.r, self.defect, self.n, self.delta
        );
        if let Some(m) = measured {
            out.push_str(&format!("max-it {m}\n"));
        }
        out
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} D={} n={} delta={}",
            self.r, self.defect, self.n, self.delta
        )
    }
}

/// A construction tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// `K_{Δ,Δ}`: claim `(2, 1, Δ, Δ)`.
    Kdd { delta: usize },
    /// Complete `m`-partite graph with classes of size `s`: claim
    /// `(m, m-1, s, (m-1)s)`.
    Blowup { m: usize, s: usize },
    /// `⌊r/2⌋` disjoint copies of `K_{Δ,Δ}`, plus a class of `Δ` isolated
    /// vertices when `r` is odd: claim `(r, ⌊r/2⌋, Δ, Δ)`.
    BipartiteBlocks { r: usize, delta: usize },
    /// An MPG file with an externally supplied claim.
    File { path: PathBuf, claim: Claim },
    /// Adds `K_r(⌊Δ/(r-1)⌋)` across the classes: defect down by one, `n` up
    /// by `⌊Δ/(r-1)⌋`.
    AddKr(Box<Recipe>),
    /// `m` disjoint copies: claim `(mr, mD, n, Δ)`.
    DisjointCopies(Box<Recipe>, usize),
    /// `m` rows, each with `⌊Δ/((m-1)r)⌋` spine vertices per class; spine
    /// vertices are complete to the spines of the other rows. Claim
    /// `(mr, (m-1)D, n + ⌊Δ/((m-1)r)⌋, Δ)`.
    RowsPlusSpine(Box<Recipe>, usize),
    /// `m = jl` rows with a medium layer (groups of `l` consecutive rows) and
    /// a small layer (all rows). Claim
    /// `(mr, (m-j-1)D, n + ⌊Δ/((l-1)r)⌋ + ⌊Δ/((m-1)r)⌋, Δ)`.
    ThreeLayer {
        child: Box<Recipe>,
        m: usize,
        j: usize,
        l: usize,
    },
    /// Extremal graph for `n(q(d+i)+k, d+1, Δ)` built from a `(q, 1)` base.
    /// The base defaults to `K_{Δ,Δ}` when `q = 2` and must be given
    /// otherwise.
    MainConstruction {
        q: usize,
        i: usize,
        d: usize,
        k: usize,
        delta: usize,
        base: Option<Box<Recipe>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn reject(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Rejected(msg.into())
}

impl From<BoundsError> for ConstructionError {
    fn from(e: BoundsError) -> Self {
        reject(e.to_string())
    }
}

impl Recipe {
    pub fn kdd(delta: usize) -> Recipe {
        Recipe::Kdd { delta }
    }

    pub fn add_kr(self) -> Recipe {
        Recipe::AddKr(Box::new(self))
    }

    pub fn copies(self, m: usize) -> Recipe {
        Recipe::DisjointCopies(Box::new(self), m)
    }

    pub fn rows_spine(self, m: usize) -> Recipe {
        Recipe::RowsPlusSpine(Box::new(self), m)
    }

    pub fn three_layer(self, m: usize, j: usize, l: usize) -> Recipe {
        Recipe::ThreeLayer {
            child: Box::new(self),
            m,
            j,
            l,
        }
    }

    /// The claim this recipe promises, computed without building anything.
    pub fn claim(&self) -> Result<Claim, ConstructionError> {
        match self {
            Recipe::Kdd { delta } => {
                if *delta == 0 {
                    return Err(reject("K_{Δ,Δ} needs Δ >= 1"));
                }
                Ok(Claim { r: 2, defect: 1, n: *delta, delta: *delta })
            }
            Recipe::Blowup { m, s } => {
                if *m < 2 {
                    return Err(reject(format!("blow-up needs m >= 2, got m={m}")));
                }
                Ok(Claim { r: *m, defect: m - 1, n: *s, delta: (m - 1) * s })
            }
            Recipe::BipartiteBlocks { r, delta } => {
                if *r < 2 {
                    return Err(reject(format!("blocks need r >= 2, got r={r}")));
                }
                Ok(Claim { r: *r, defect: r / 2, n: *delta, delta: *delta })
            }
            Recipe::File { claim, .. } => {
                if claim.defect == 0 {
                    return Err(reject("file claim needs defect >= 1"));
                }
                Ok(*claim)
            }
            Recipe::AddKr(child) => {
                let c = child.claim()?;
                if c.r < 2 {
                    return Err(reject(format!("adding K_r needs r >= 2, got r={}", c.r)));
                }
                if c.defect < 2 {
                    return Err(reject(format!(
                        "adding K_r lowers the defect to {}, below 1",
                        c.defect - 1
                    )));
                }
                Ok(Claim {
                    defect: c.defect - 1,
                    n: c.n + c.delta / (c.r - 1),
                    ..c
                })
            }
            Recipe::DisjointCopies(child, m) => {
                let c = child.claim()?;
                if *m < 1 {
                    return Err(reject("disjoint copies need m >= 1"));
                }
                Ok(Claim { r: m * c.r, defect: m * c.defect, ..c })
            }
            Recipe::RowsPlusSpine(child, m) => {
                let c = child.claim()?;
                if *m < 2 {
                    return Err(reject(format!("rows with spine need m >= 2, got m={m}")));
                }
                Ok(Claim {
                    r: m * c.r,
                    defect: (m - 1) * c.defect,
                    n: c.n + c.delta / ((m - 1) * c.r),
                    delta: c.delta,
                })
            }
            Recipe::ThreeLayer { child, m, j, l } => {
                let c = child.claim()?;
                if *l < 2 || *j < 1 || *m != j * l {
                    return Err(reject(format!(
                        "three-layer needs m = jl with l >= 2, got m={m} j={j} l={l}"
                    )));
                }
                let defect = (m - j - 1) * c.defect;
                if defect < 1 {
                    return Err(reject(format!(
                        "three-layer with m={m} j={j} leaves defect 0"
                    )));
                }
                Ok(Claim {
                    r: m * c.r,
                    defect,
                    n: c.n + c.delta / ((l - 1) * c.r) + c.delta / ((m - 1) * c.r),
                    delta: c.delta,
                })
            }
            Recipe::MainConstruction { q, i, d, k, delta, base } => {
                main_construction_check(*q as u64, *i as u64, *d as u64, *k as u64)?;
                let b = match base {
                    Some(b) => {
                        let c = b.claim()?;
                        if c.r != *q || c.defect != 1 || c.delta != *delta {
                            return Err(reject(format!(
                                "main construction base must claim r={q}, D=1, delta={delta}; got {c}"
                            )));
                        }
                        c
                    }
                    None => Claim {
                        r: *q,
                        defect: 1,
                        n: nr_formula(*q as u64, *delta as u64) as usize,
                        delta: *delta,
                    },
                };
                let n = if *i == 1 {
                    b.n
                } else {
                    let l = (d + i) / (i - 1);
                    b.n + delta / ((l - 1) * q)
                };
                Ok(Claim { r: q * (d + i) + k, defect: d + 1, n, delta: *delta })
            }
        }
    }

    /// True if the recipe contains a file base (whose claim is taken on
    /// trust).
    pub fn uses_file(&self) -> bool {
        match self {
            Recipe::File { .. } => true,
            Recipe::Kdd { .. } | Recipe::Blowup { .. } | Recipe::BipartiteBlocks { .. } => false,
            Recipe::AddKr(c) | Recipe::DisjointCopies(c, _) | Recipe::RowsPlusSpine(c, _) => {
                c.uses_file()
            }
            Recipe::ThreeLayer { child, .. } => child.uses_file(),
            Recipe::MainConstruction { base, .. } => base.as_ref().is_some_and(|b| b.uses_file()),
        }
    }
}

/// Claimed `n` of a recipe as an exact value.
pub fn lower_bound_from_recipe(recipe: &Recipe) -> Result<Rat, ConstructionError> {
    Ok(Rat::from_integer(recipe.claim()?.n as i64))
}

fn blowup(sizes: Vec<usize>) -> MultipartiteGraph {
    crate::graph::complete_multipartite(&sizes)
}

/// `m` disjoint copies of `g`, row `a` on classes `[a·r₀, (a+1)·r₀)`.
fn rows(g: &MultipartiteGraph, m: usize) -> GraphBuilder {
    let r0 = g.num_classes();
    let mut sizes = Vec::with_capacity(m * r0);
    for _ in 0..m {
        sizes.extend_from_slice(g.class_sizes());
    }
    let mut b = GraphBuilder::new(sizes);
    for a in 0..m {
        for &(x, y) in g.edges() {
            b.add_edge(
                VertexRef::new(x.part + a * r0, x.index),
                VertexRef::new(y.part + a * r0, y.index),
            )
            .expect("copies are disjoint");
        }
    }
    b
}

/// Appends `per_class` new vertices to every class of every row and makes the
/// new vertices of two rows in the same group completely adjacent.
fn add_layer(b: &mut GraphBuilder, m: usize, r0: usize, per_class: usize, groups: &[Vec<usize>]) {
    let mut layer: Vec<Vec<VertexRef>> = vec![vec![]; m];
    for (a, verts) in layer.iter_mut().enumerate() {
        for c in 0..r0 {
            let part = a * r0 + c;
            let first = b.grow_class(part, per_class);
            verts.extend((first..first + per_class).map(|i| VertexRef::new(part, i)));
        }
    }
    for group in groups {
        for (x, &a) in group.iter().enumerate() {
            for &bb in &group[x + 1..] {
                for &u in &layer[a] {
                    for &w in &layer[bb] {
                        b.add_edge(u, w).expect("layer vertices of distinct rows");
                    }
                }
            }
        }
    }
}

fn pad(g: MultipartiteGraph, k: usize, size: usize) -> MultipartiteGraph {
    let mut b = g.to_builder();
    for _ in 0..k {
        b.add_class(size);
    }
    b.build()
}

fn load_file(path: &PathBuf) -> Result<MultipartiteGraph, ConstructionError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ConstructionError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    MultipartiteGraph::from_mpg(&text).map_err(|source| ConstructionError::Parse { path: shown, source })
}

/// Builds the graph of a recipe together with its claim.
pub fn build(recipe: &Recipe) -> Result<(MultipartiteGraph, Claim), ConstructionError> {
    let claim = recipe.claim()?;
    let g = match recipe {
        Recipe::Kdd { delta } => blowup(vec![*delta; 2]),
        Recipe::Blowup { m, s } => blowup(vec![*s; *m]),
        Recipe::BipartiteBlocks { r, delta } => {
            let block = blowup(vec![*delta; 2]);
            let mut g = rows(&block, r / 2).build();
            if r % 2 == 1 {
                g = pad(g, 1, *delta);
            }
            g
        }
        Recipe::File { path, .. } => load_file(path)?,
        Recipe::AddKr(child) => {
            let (g, c) = build(child)?;
            let r = g.num_classes();
            let s = c.delta / (r - 1);
            let mut b = g.to_builder();
            add_layer_single_row(&mut b, r, s);
            b.build()
        }
        Recipe::DisjointCopies(child, m) => {
            let (g, _) = build(child)?;
            rows(&g, *m).build()
        }
        Recipe::RowsPlusSpine(child, m) => {
            let (g, c) = build(child)?;
            let r0 = g.num_classes();
            let mut b = rows(&g, *m);
            let s = c.delta / ((m - 1) * r0);
            add_layer(&mut b, *m, r0, s, &[(0..*m).collect()]);
            b.build()
        }
        Recipe::ThreeLayer { child, m, j, l } => {
            let (g, c) = build(child)?;
            let r0 = g.num_classes();
            let mut b = rows(&g, *m);
            let medium: Vec<Vec<usize>> = (0..*j).map(|x| (x * l..(x + 1) * l).collect()).collect();
            add_layer(&mut b, *m, r0, c.delta / ((l - 1) * r0), &medium);
            add_layer(&mut b, *m, r0, c.delta / ((m - 1) * r0), &[(0..*m).collect()]);
            b.build()
        }
        Recipe::MainConstruction { q, i, d, k, delta, base } => {
            let base = match base {
                Some(b) => (**b).clone(),
                None if *q == 2 => Recipe::kdd(*delta),
                None => {
                    return Err(reject(format!(
                        "main construction with q={q} needs an explicit (q, 1) base"
                    )))
                }
            };
            let inner = if *i == 1 {
                base.copies(d + 1)
            } else {
                base.rows_spine((d + i) / (i - 1)).copies(i - 1)
            };
            let (g, c) = build(&inner)?;
            pad(g, *k, c.n)
        }
    };
    Ok((g, claim))
}

/// `K_r(s)` laid over the `r` classes of a single row.
fn add_layer_single_row(b: &mut GraphBuilder, r: usize, s: usize) {
    let mut new: Vec<Vec<VertexRef>> = vec![];
    for part in 0..r {
        let first = b.grow_class(part, s);
        new.push((first..first + s).map(|i| VertexRef::new(part, i)).collect());
    }
    for p in 0..r {
        for q in p + 1..r {
            for &u in &new[p] {
                for &w in &new[q] {
                    b.add_edge(u, w).expect("distinct classes");
                }
            }
        }
    }
}

/// Why a claim failed to certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    ClassCount { expected: usize, found: usize },
    ClassTooSmall { class: usize, size: usize, claimed: usize },
    DegreeTooLarge { vertex: VertexRef, degree: usize, claimed: usize },
    /// A partial IT larger than the claim allows.
    LargeTransversal(Transversal),
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::ClassCount { expected, found } => {
                write!(f, "expected {expected} classes, found {found}")
            }
            Refutation::ClassTooSmall { class, size, claimed } => {
                write!(f, "class {class} has {size} vertices, claimed at least {claimed}")
            }
            Refutation::DegreeTooLarge { vertex, degree, claimed } => {
                write!(f, "vertex {vertex} has degree {degree}, claimed at most {claimed}")
            }
            Refutation::LargeTransversal(t) => {
                write!(f, "found a {}-IT {t}", t.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("claim refuted: {0}")]
    Refuted(Refutation),
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A claim that passed [`certify_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedClaim {
    pub claim: Claim,
    pub status: ClaimStatus,
    /// Exhaustively measured maximum partial IT size.
    pub measured_max_it: usize,
    pub witness: Transversal,
}

/// Checks class count and sizes, maximum degree, and (exhaustively) the
/// largest partial IT of `g` against `claim`.
pub fn certify_graph(
    g: &MultipartiteGraph,
    claim: &Claim,
    budget: &mut Budget,
) -> Result<CertifiedClaim, CertifyError> {
    let refuted = |r| Err(CertifyError::Refuted(r));
    if g.num_classes() != claim.r {
        return refuted(Refutation::ClassCount {
            expected: claim.r,
            found: g.num_classes(),
        });
    }
    if let Some(class) = (0..g.num_classes()).find(|&c| g.class_size(c) < claim.n) {
        return refuted(Refutation::ClassTooSmall {
            class,
            size: g.class_size(class),
            claimed: claim.n,
        });
    }
    if g.max_degree() > claim.delta {
        let vertex = g
            .vertices()
            .find(|&v| g.degree(v).expect("valid") > claim.delta)
            .expect("a vertex attains the maximum degree");
        return refuted(Refutation::DegreeTooLarge {
            vertex,
            degree: g.degree(vertex).expect("valid"),
            claimed: claim.delta,
        });
    }
    let solved = max_partial_it_with_budget(g, budget)?;
    debug_assert!(solved.exhaustive);
    if solved.size > claim.max_it_allowed() {
        return refuted(Refutation::LargeTransversal(solved.witness));
    }
    Ok(CertifiedClaim {
        claim: *claim,
        status: ClaimStatus::Certified,
        measured_max_it: solved.size,
        witness: solved.witness,
    })
}

/// Builds a recipe and certifies its claim.
pub fn certify(recipe: &Recipe, budget: &mut Budget) -> Result<CertifiedClaim, CertifyError> {
    let (g, claim) = build(recipe)?;
    certify_graph(&g, &claim, budget)
}
