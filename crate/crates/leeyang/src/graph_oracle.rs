//! Independent brute-force verification layer.
//!
//! Three unrelated routes to the same quantities keep the moment engine
//! honest: half-edge set-partition enumeration reproduces A_n from the raw
//! counting definition, Ising spin sums and the high-temperature subgraph
//! expansion verify each other on explicit graphs, and exhaustive
//! k-regular-multigraph enumeration checks the average-partition-function
//! identity against the exact point evaluation.

use crate::algebra::{double_factorial, LambdaPoly, MultiIndex, Rational};
use crate::moment::an_at_point;
use crate::potential::{ising_master, Potential};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Explicit multigraph given by a vertex count and an edge multiset.
/// Loops are allowed and contribute 2 to their endpoint's degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimpleGraphSpec {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraphSpec {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }
}

/// Default cap on the total number of labelled half-edges in partition_sum.
pub const DEFAULT_HALF_EDGE_CAP: u64 = 12;

/// A_n by explicit enumeration of vertex set-partitions of labelled
/// half-edges, weighted per block by Λ_(block degree), independent of the
/// moment engine:
///
/// A_n = Σ_{|s| = nM} [Π_i (2s_i - 1)!! / (2s)!] Σ_partitions Π_blocks Λ_deg(block).
pub fn partition_sum(p: &Potential, n: u64, half_edge_cap: u64) -> Result<LambdaPoly> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidInput(report.violations.join("; ")));
    }
    if n == 0 {
        return Ok(LambdaPoly::one());
    }
    let (Some(_), Some(nm)) = (p.nk(n), p.nm(n)) else {
        return Ok(LambdaPoly::zero());
    };
    if 2 * nm > half_edge_cap {
        return Err(Error::Resource(format!(
            "partition_sum needs {} half-edges, above the cap of {half_edge_cap}",
            2 * nm
        )));
    }
    let d = p.d();
    let mut total = LambdaPoly::zero();
    for s in compositions(nm, d) {
        // colour ranges: colour i owns 2 s_i consecutive labels
        let colours: Vec<usize> = s
            .iter()
            .enumerate()
            .flat_map(|(i, &si)| std::iter::repeat(i).take(2 * si as usize))
            .collect();
        let mut weight_num = BigInt::one();
        for &si in &s {
            weight_num *= double_factorial(2 * si as i64 - 1);
        }
        let mut weight_den = BigInt::one();
        for &si in &s {
            weight_den *= BigInt::from(crate::algebra::factorial(2 * si));
        }
        let weight = Rational::new(weight_num, weight_den);
        let psum = enumerate_partitions(p, &colours);
        total = &total + &psum.scale(&weight);
    }
    Ok(total)
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Sum over set partitions of the labelled half-edges into support-admissible
/// blocks of Π_blocks Λ_deg(block), by depth-first block assignment with
/// pruning: every partial block must stay dominated by a support element and
/// blocks never exceed size k.
fn enumerate_partitions(p: &Potential, colours: &[usize]) -> LambdaPoly {
    struct Ctx<'a> {
        p: &'a Potential,
        colours: &'a [usize],
        k: u64,
        support: Vec<MultiIndex>,
    }
    // blocks: per open block the colour-degree vector and whether more
    // elements may still join (element count tracked through degree total)
    fn recurse(ctx: &Ctx, next: usize, blocks: &mut Vec<Vec<u32>>, acc: &LambdaPoly) -> LambdaPoly {
        if next == ctx.colours.len() {
            // every block must be exactly a support element
            let mut product = acc.clone();
            for b in blocks.iter() {
                let w = MultiIndex::new(b.clone());
                if w.total() != ctx.k {
                    return LambdaPoly::zero();
                }
                let lam = ctx.p.marking(&w);
                if lam.is_zero() {
                    return LambdaPoly::zero();
                }
                product = &product * &lam;
            }
            return product;
        }
        let remaining = (ctx.colours.len() - next) as u64;
        // every open block still needs k - |block| more elements
        let deficit: u64 = blocks
            .iter()
            .map(|b| ctx.k - b.iter().map(|&x| x as u64).sum::<u64>())
            .sum();
        if deficit > remaining {
            return LambdaPoly::zero();
        }
        let colour = ctx.colours[next];
        let mut total = LambdaPoly::zero();
        // join an existing block
        for bi in 0..blocks.len() {
            blocks[bi][colour] += 1;
            let w = MultiIndex::new(blocks[bi].clone());
            let viable = w.total() <= ctx.k && ctx.support.iter().any(|sw| w.dominated_by(sw));
            if viable {
                // a full block must be closed as a support element right away
                let closed_ok = w.total() < ctx.k || !ctx.p.marking(&w).is_zero();
                if closed_ok {
                    total = &total + &recurse(ctx, next + 1, blocks, acc);
                }
            }
            blocks[bi][colour] -= 1;
        }
        // open a new block (restricted growth: only one "new block" choice)
        let mut fresh = vec![0u32; ctx.p.d()];
        fresh[colour] = 1;
        blocks.push(fresh);
        total = &total + &recurse(ctx, next + 1, blocks, acc);
        blocks.pop();
        total
    }
    let ctx = Ctx {
        p,
        colours,
        k: p.k() as u64,
        support: p.markings().map(|(w, _)| w.clone()).collect(),
    };
    let mut blocks = Vec::new();
    recurse(&ctx, 0, &mut blocks, &LambdaPoly::one())
}

// ---- Ising partition functions on explicit graphs ----

/// Brute-force spin sum Σ_{σ ∈ {±1}^V} exp(βJ Σ_edges σ_i σ_j + βh Σ_i σ_i).
/// Loops contribute σ_i² = 1 each.
pub fn spin_sum_partition(
    g: &SimpleGraphSpec,
    beta_j: Complex64,
    beta_h: Complex64,
) -> Result<Complex64> {
    if g.vertices > 24 {
        return Err(Error::Resource(format!(
            "spin sum enumerates 2^{} states; vertex cap is 24",
            g.vertices
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0u32..1 << g.vertices {
        let spin = |v: usize| if mask >> v & 1 == 1 { 1.0 } else { -1.0 };
        let mut energy = Complex64::new(0.0, 0.0);
        for &(a, b) in &g.edges {
            energy += beta_j * spin(a) * spin(b);
        }
        for v in 0..g.vertices {
            energy += beta_h * spin(v);
        }
        total += energy.exp();
    }
    Ok(total)
}

/// High-temperature expansion of the same partition function:
///
/// Z = 2^|V| cosh(βJ)^|E| cosh(βh)^|V| Σ_{γ ⊆ E} tanh(βJ)^|γ| tanh(βh)^{#odd(γ)},
///
/// the ghost-vertex reduction with one fugacity factor per odd-degree vertex.
/// With βh = 0 only Eulerian subgraphs contribute.
pub fn subgraph_expansion_partition(
    g: &SimpleGraphSpec,
    beta_j: Complex64,
    beta_h: Complex64,
) -> Result<Complex64> {
    if g.edges.len() > 24 {
        return Err(Error::Resource(format!(
            "subgraph expansion enumerates 2^{} subgraphs; edge cap is 24",
            g.edges.len()
        )));
    }
    let tj = beta_j.tanh();
    let th = beta_h.tanh();
    let mut sum = Complex64::new(0.0, 0.0);
    for mask in 0u32..1 << g.edges.len() {
        let mut deg = vec![0u32; g.vertices];
        let mut edge_count = 0u32;
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
                edge_count += 1;
            }
        }
        let odd = deg.iter().filter(|&&x| x % 2 == 1).count() as u32;
        sum += tj.powu(edge_count) * th.powu(odd);
    }
    let prefactor = Complex64::new(2.0, 0.0).powu(g.vertices as u32)
        * beta_j.cosh().powu(g.edges.len() as u32)
        * beta_h.cosh().powu(g.vertices as u32);
    Ok(prefactor * sum)
}

// ---- average partition function over k-regular multigraphs ----

/// One isomorphism class of k-regular multigraphs with its automorphism
/// order and exact subgraph-generating weight.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub graph: SimpleGraphSpec,
    pub aut_order: BigInt,
}

/// Comparison of the graph-side average with the moment-engine value.
#[derive(Clone, Debug, Serialize)]
pub struct AverageReport {
    pub class_count: usize,
    pub graph_side: String,
    pub moment_side: String,
    pub pass: bool,
}

/// Enumerate isomorphism classes of k-regular multigraphs with Euler
/// characteristic -n, via all perfect matchings of k·|V| labelled half-edge
/// slots and canonical-form deduplication. |Aut| comes from orbit-stabiliser:
/// |Aut G| = (k!)^|V| |V|! / #matchings(G).
pub fn enumerate_regular_classes(k: u32, n: u64) -> Result<Vec<GraphClass>> {
    if 2 * n % (k as u64 - 2) != 0 {
        return Ok(Vec::new());
    }
    let nv = (2 * n / (k as u64 - 2)) as usize;
    let half_edges = k as usize * nv;
    if half_edges > 16 {
        return Err(Error::Resource(format!(
            "{half_edges} half-edge slots exceed the enumeration cap of 16"
        )));
    }
    let owner: Vec<usize> = (0..half_edges).map(|h| h / k as usize).collect();
    let mut matchings_by_canon: BTreeMap<Vec<(usize, usize)>, (u64, SimpleGraphSpec)> =
        BTreeMap::new();
    let mut pairing = Vec::new();
    enumerate_matchings(&mut vec![false; half_edges], &mut pairing, &mut |pairs| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (owner[a], owner[b]);
                (u.min(v), u.max(v))
            })
            .collect();
        let canon = canonical_edge_list(nv, &edges);
        let entry = matchings_by_canon.entry(canon.clone()).or_insert_with(|| {
            (
                0,
                SimpleGraphSpec {
                    vertices: nv,
                    edges: canon,
                },
            )
        });
        entry.0 += 1;
    });
    let group_order = BigInt::from(crate::algebra::factorial(k as u64))
        .pow(nv as u32)
        * BigInt::from(crate::algebra::factorial(nv as u64));
    Ok(matchings_by_canon
        .into_values()
        .map(|(count, graph)| GraphClass {
            graph,
            aut_order: &group_order / BigInt::from(count),
        })
        .collect())
}

fn enumerate_matchings(
    used: &mut Vec<bool>,
    pairing: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let first = match used.iter().position(|u| !u) {
        None => {
            visit(pairing);
            return;
        }
        Some(f) => f,
    };
    used[first] = true;
    for second in first + 1..used.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        pairing.push((first, second));
        enumerate_matchings(used, pairing, visit);
        pairing.pop();
        used[second] = false;
    }
    used[first] = false;
}

/// Minimal sorted edge list over all vertex relabelings.
fn canonical_edge_list(nv: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..nv).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut relabeled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (p[a], p[b]);
                (u.min(v), u.max(v))
            })
            .collect();
        relabeled.sort_unstable();
        match &best {
            Some(b) if *b <= relabeled => {}
            _ => best = Some(relabeled),
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        visit(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, visit);
        perm.swap(i, j);
    }
}

/// Exact subgraph sum Σ_{γ ⊆ E_G} Π_v J^{deg_γ(v)} h^{deg_γ(v) mod 2}.
fn subgraph_weight(g: &SimpleGraphSpec, j: &Rational, h: &Rational) -> Rational {
    let ne = g.edges.len();
    let mut total = Rational::zero();
    for mask in 0u32..1 << ne {
        let mut deg = vec![0u32; g.vertices];
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        let mut term = Rational::one();
        for &dv in &deg {
            for _ in 0..dv {
                term *= j;
            }
            if dv % 2 == 1 {
                term *= h;
            }
        }
        total += term;
    }
    total
}

/// Check Σ_G (1/|Aut G|) Σ_{γ⊆G} J^deg h^(deg mod 2) against an_at_point on
/// the master potential, both sides exact.
pub fn average_partition_check(k: u32, n: u64, j: &Rational, h: &Rational) -> Result<AverageReport> {
    let classes = enumerate_regular_classes(k, n)?;
    let mut graph_side = Rational::zero();
    for class in &classes {
        let weight = subgraph_weight(&class.graph, j, h);
        graph_side += weight / Rational::from_integer(class.aut_order.clone());
    }
    let w = ising_master(k, j, h)?;
    let moment_side = an_at_point(&w, n, &crate::algebra::Budget::default())?;
    Ok(AverageReport {
        class_count: classes.len(),
        pass: graph_side == moment_side,
        graph_side: crate::algebra::rational_to_string(&graph_side),
        moment_side: crate::algebra::rational_to_string(&moment_side),
    })
}
