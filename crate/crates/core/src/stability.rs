//! King's criterion for dimension vector `(1,...,1)`, characters built from
//! weight matrices, and the combinatorial good/great certificates.
//!
//! A subset `S` of nodes supports a subrepresentation of a point exactly when
//! no nonzero arrow leaves `S`. A point is `chi`-semistable iff `chi_S <= 0` for
//! every such `S`, and `chi`-stable iff in addition equality holds only for the
//! empty set and the full node set.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::repvar::RepresentationPoint;

/// Default node-count cap for the `2^n` support enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Largest quiver the bit-set representation can hold.
pub const MAX_NODES: usize = 64;

/// A set of 1-based nodes. Ordered by size, then lexicographically by members.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(u64);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn from_nodes(nodes: impl IntoIterator<Item = usize>) -> Self {
        nodes.into_iter().fold(NodeSet(0), |s, i| s.with(i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn with(self, node: usize) -> Self {
        NodeSet(self.0 | 1 << (node - 1))
    }

    pub fn contains(self, node: usize) -> bool {
        self.0 >> (node - 1) & 1 == 1
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn nodes(self) -> Vec<usize> {
        (0..MAX_NODES)
            .filter(|k| self.0 >> k & 1 == 1)
            .map(|k| k + 1)
            .collect()
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // Equal-size sets compare like their sorted node lists: the smallest node in
        // the symmetric difference decides.
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", nodes.join(","))
    }
}

/// The supports of all subrepresentations of one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFamily {
    n: usize,
    supports: BTreeSet<NodeSet>,
}

impl SupportFamily {
    pub fn new(n: usize, supports: impl IntoIterator<Item = NodeSet>) -> Self {
        SupportFamily {
            n,
            supports: supports.into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn contains(&self, s: NodeSet) -> bool {
        self.supports.contains(&s)
    }

    /// Supports in canonical order (by size, then lexicographically).
    pub fn iter(&self) -> impl Iterator<Item = NodeSet> + '_ {
        self.supports.iter().copied()
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.iter().map(NodeSet::nodes).collect()
    }

    pub fn is_lattice(&self) -> bool {
        self.contains(NodeSet::empty())
            && self.contains(NodeSet::full(self.n))
            && self.iter().all(|a| {
                self.iter()
                    .all(|b| self.contains(a.union(b)) && self.contains(a.intersection(b)))
            })
    }
}

/// An integer character `chi` with dimension vector `alpha`, `sum chi_i alpha_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    chi: Vec<i64>,
    alpha: Vec<u64>,
}

impl Character {
    pub fn new(chi: Vec<i64>) -> Result<Self> {
        let alpha = vec![1; chi.len()];
        Self::with_dimension_vector(chi, alpha)
    }

    pub fn with_dimension_vector(chi: Vec<i64>, alpha: Vec<u64>) -> Result<Self> {
        if chi.len() != alpha.len() {
            return Err(Error::InvalidCharacter(
                "character and dimension vector differ in length".into(),
            ));
        }
        if alpha.contains(&0) {
            return Err(Error::InvalidCharacter(
                "dimension vector entries must be positive".into(),
            ));
        }
        let pairing: i128 = chi
            .iter()
            .zip(&alpha)
            .map(|(&c, &a)| i128::from(c) * i128::from(a))
            .sum();
        if pairing != 0 {
            return Err(Error::InvalidCharacter(format!(
                "sum of chi_i * alpha_i is {pairing}, not 0"
            )));
        }
        Ok(Character { chi, alpha })
    }

    pub fn zero(n: usize) -> Self {
        Character {
            chi: vec![0; n],
            alpha: vec![1; n],
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.chi
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.chi.len()
    }

    /// `chi_S`, the sum of `chi` over the nodes of `s`.
    pub fn subset_sum(&self, s: NodeSet) -> i64 {
        s.nodes().iter().map(|&i| self.chi[i - 1]).sum()
    }

    fn check_for(&self, q: &Quiver) -> Result<()> {
        if self.n() != q.n() {
            return Err(Error::InvalidCharacter(format!(
                "character has {} entries, quiver has {} nodes",
                self.n(),
                q.n()
            )));
        }
        if self.alpha.iter().any(|&a| a != 1) {
            return Err(Error::InvalidCharacter(
                "stability tests need dimension vector (1,...,1)".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chi.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Non-negative integers `m_ij` with zero diagonal (stored 0-based, addressed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    m: Vec<Vec<u64>>,
}

impl WeightMatrix {
    pub fn new(m: Vec<Vec<u64>>) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidWeights("matrix is not square".into()));
        }
        if let Some(i) = (0..n).find(|&i| m[i][i] != 0) {
            return Err(Error::InvalidWeights(format!(
                "diagonal entry m[{0}][{0}] is nonzero",
                i + 1
            )));
        }
        Ok(WeightMatrix { m })
    }

    pub fn zeros(n: usize) -> Self {
        WeightMatrix {
            m: vec![vec![0; n]; n],
        }
    }

    /// Builds from `(value, i, j)` triples with 1-based indices; repeated entries add up.
    pub fn from_entries(n: usize, entries: &[(u64, usize, usize)]) -> Result<Self> {
        let mut m = vec![vec![0; n]; n];
        for &(v, i, j) in entries {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidWeights(format!(
                    "entry ({i},{j}) out of range 1..={n}"
                )));
            }
            m[i - 1][j - 1] += v;
        }
        Self::new(m)
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.m[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.m
    }

    /// Nonzero entries as `(value, i, j)`, row-major.
    pub fn entries(&self) -> Vec<(u64, usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.push((v, i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn incremented(&self, i: usize, j: usize) -> Result<Self> {
        let mut m = self.m.clone();
        m[i - 1][j - 1] += 1;
        Self::new(m)
    }

    pub fn sum(&self, other: &WeightMatrix) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::InvalidWeights("matrices of different size".into()));
        }
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self::new(m)
    }
}

/// `chi_l = sum_i m_il - sum_j m_lj`.
pub fn character_from_weights(m: &WeightMatrix) -> Character {
    let n = m.n();
    let chi = (0..n)
        .map(|l| {
            let incoming: u64 = (0..n).map(|i| m.m[i][l]).sum();
            let outgoing: u64 = m.m[l].iter().sum();
            incoming as i64 - outgoing as i64
        })
        .collect();
    Character {
        chi,
        alpha: vec![1; n],
    }
}

fn nonzero_arrow_edges(q: &Quiver, p: &RepresentationPoint) -> Result<Vec<(usize, usize)>> {
    if p.values().len() != q.arrows().len() {
        return Err(Error::DimensionMismatch(
            "point does not belong to this quiver".into(),
        ));
    }
    if !p.satisfies_relations(q) {
        log::warn!("point does not satisfy the quiver relations; computing supports anyway");
    }
    Ok(q.arrows()
        .iter()
        .zip(p.values())
        .filter(|(_, v)| !v.is_zero())
        .map(|(a, _)| (a.source, a.target))
        .collect())
}

pub fn subrep_supports(q: &Quiver, p: &RepresentationPoint) -> Result<SupportFamily> {
    subrep_supports_with_cap(q, p, DEFAULT_ENUMERATION_CAP)
}

/// Support family by testing every subset of nodes.
pub fn subrep_supports_with_cap(
    q: &Quiver,
    p: &RepresentationPoint,
    cap: usize,
) -> Result<SupportFamily> {
    let n = q.n();
    if n > cap || n >= MAX_NODES {
        return Err(Error::CapacityExceeded { n, cap });
    }
    let edges: Vec<(u64, u64)> = nonzero_arrow_edges(q, p)?
        .into_iter()
        .map(|(s, t)| (1u64 << (s - 1), 1u64 << (t - 1)))
        .collect();
    let supports = (0..1u64 << n)
        .filter(|&mask| edges.iter().all(|&(s, t)| mask & s == 0 || mask & t != 0))
        .map(NodeSet);
    Ok(SupportFamily::new(n, supports))
}

/// Support family as all unions of the forward closures of single nodes along nonzero arrows.
pub fn supports_from_closures(q: &Quiver, p: &RepresentationPoint) -> Result<SupportFamily> {
    let n = q.n();
    if n > MAX_NODES {
        return Err(Error::CapacityExceeded { n, cap: MAX_NODES });
    }
    let mut out = vec![Vec::new(); n + 1];
    for (s, t) in nonzero_arrow_edges(q, p)? {
        out[s].push(t);
    }
    let mut family: BTreeSet<u64> = BTreeSet::from([0]);
    for v in 1..=n {
        let closure = reach(&out, v).bits();
        let grown: Vec<u64> = family.iter().map(|f| f | closure).collect();
        family.extend(grown);
    }
    Ok(SupportFamily::new(n, family.into_iter().map(NodeSet)))
}

fn reach(adj: &[Vec<usize>], start: usize) -> NodeSet {
    let mut seen = NodeSet::empty().with(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen.contains(w) {
                seen = seen.with(w);
                stack.push(w);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub semistable: bool,
    pub stable: bool,
    /// A support with `chi_S > 0` if unstable, else a proper support with `chi_S = 0`
    /// if strictly semistable, else `None`.
    pub violating_support: Option<Vec<usize>>,
    pub supports_count: usize,
}

/// Applies King's inequalities to a precomputed support family.
pub fn verdict_from_family(fam: &SupportFamily, chi: &Character) -> StabilityReport {
    let full = NodeSet::full(fam.n());
    let mut worst: Option<(i64, NodeSet)> = None;
    for s in fam.iter() {
        let v = chi.subset_sum(s);
        if v > 0 && worst.is_none_or(|(w, _)| v > w) {
            worst = Some((v, s));
        }
    }
    if let Some((_, s)) = worst {
        return StabilityReport {
            semistable: false,
            stable: false,
            violating_support: Some(s.nodes()),
            supports_count: fam.len(),
        };
    }
    let tight = fam
        .iter()
        .find(|&s| !s.is_empty() && s != full && chi.subset_sum(s) == 0);
    StabilityReport {
        semistable: true,
        stable: tight.is_none(),
        violating_support: tight.map(NodeSet::nodes),
        supports_count: fam.len(),
    }
}

pub fn stability_report(
    q: &Quiver,
    p: &RepresentationPoint,
    chi: &Character,
) -> Result<StabilityReport> {
    chi.check_for(q)?;
    Ok(verdict_from_family(&subrep_supports(q, p)?, chi))
}

pub fn is_semistable(q: &Quiver, p: &RepresentationPoint, chi: &Character) -> Result<bool> {
    Ok(stability_report(q, p, chi)?.semistable)
}

pub fn is_stable(q: &Quiver, p: &RepresentationPoint, chi: &Character) -> Result<bool> {
    Ok(stability_report(q, p, chi)?.stable)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Certified,
    Uncertified(Uncertified),
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }
}

/// Why a weight matrix did not pass a sufficient criterion. This is not a proof
/// that the character fails to be good or great.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uncertified {
    /// `m_ij > 0` but `Hom(E_i, E_j)` is not generated by global sections.
    NotGloballyGenerated { i: usize, j: usize },
    /// No sequence of allowed moves leads from `from` to `to`.
    NotConnected { from: usize, to: usize },
}

fn check_weights_for<'q>(q: &'q Quiver, m: &WeightMatrix) -> Result<&'q [Vec<bool>]> {
    let gg = q
        .global_generation()
        .ok_or(Error::MissingData("global-generation table"))?;
    if m.n() != q.n() {
        return Err(Error::InvalidWeights(format!(
            "weight matrix is {0}x{0}, quiver has {1} nodes",
            m.n(),
            q.n()
        )));
    }
    Ok(gg)
}

/// Every `m_ij > 0` must have `Hom(E_i, E_j)` generated by global sections.
pub fn certify_good(q: &Quiver, m: &WeightMatrix) -> Result<Certificate> {
    let gg = check_weights_for(q, m)?;
    for (_, i, j) in m.entries() {
        if !gg[i - 1][j - 1] {
            return Ok(Certificate::Uncertified(
                Uncertified::NotGloballyGenerated { i, j },
            ));
        }
    }
    Ok(Certificate::Certified)
}

/// Directed move graph: `j -> i` when `Hom(E_i, E_j)` is globally generated (and
/// nonzero), `i -> j` when `m_ij > 0`. Adjacency lists are 1-based.
pub fn move_graph(q: &Quiver, m: &WeightMatrix) -> Result<Vec<Vec<usize>>> {
    let gg = check_weights_for(q, m)?;
    let n = q.n();
    let mut adj = vec![Vec::new(); n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if i != j && gg[i - 1][j - 1] {
                adj[j].push(i);
            }
            if m.get(i, j) > 0 {
                adj[i].push(j);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(adj)
}

/// Good certificate plus strong connectivity of the move graph.
pub fn certify_great(q: &Quiver, m: &WeightMatrix) -> Result<Certificate> {
    if let Certificate::Uncertified(why) = certify_good(q, m)? {
        return Ok(Certificate::Uncertified(why));
    }
    let adj = move_graph(q, m)?;
    let n = q.n();
    let forward = reach(&adj, 1);
    if let Some(to) = (1..=n).find(|&v| !forward.contains(v)) {
        return Ok(Certificate::Uncertified(Uncertified::NotConnected {
            from: 1,
            to,
        }));
    }
    let mut reversed = vec![Vec::new(); n + 1];
    for (v, list) in adj.iter().enumerate() {
        for &w in list {
            reversed[w].push(v);
        }
    }
    let backward = reach(&reversed, 1);
    if let Some(from) = (1..=n).find(|&v| !backward.contains(v)) {
        return Ok(Certificate::Uncertified(Uncertified::NotConnected {
            from,
            to: 1,
        }));
    }
    Ok(Certificate::Certified)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    LessEq,
    Eq,
}

/// `coefficients . chi  (<= | =)  0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearConstraint {
    pub coefficients: Vec<i64>,
    pub kind: ConstraintKind,
}

impl LinearConstraint {
    pub fn holds(&self, chi: &[i64]) -> bool {
        let v: i64 = self.coefficients.iter().zip(chi).map(|(a, b)| a * b).sum();
        match self.kind {
            ConstraintKind::LessEq => v <= 0,
            ConstraintKind::Eq => v == 0,
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match c {
                1 => format!("chi{}", k + 1),
                _ => format!("{c}*chi{}", k + 1),
            })
            .collect();
        let lhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        let op = match self.kind {
            ConstraintKind::LessEq => "<=",
            ConstraintKind::Eq => "=",
        };
        write!(f, "{lhs} {op} 0")
    }
}

/// King's inequalities `chi_S <= 0` for the proper nonempty supports, in canonical
/// support order, followed by the equality `sum chi_i = 0`.
pub fn stability_cone(fam: &SupportFamily) -> Vec<LinearConstraint> {
    let n = fam.n();
    let full = NodeSet::full(n);
    let mut out: Vec<LinearConstraint> = Vec::new();
    for s in fam.iter().filter(|&s| !s.is_empty() && s != full) {
        let coefficients = (1..=n).map(|i| i64::from(s.contains(i))).collect();
        let c = LinearConstraint {
            coefficients,
            kind: ConstraintKind::LessEq,
        };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.push(LinearConstraint {
        coefficients: vec![1; n],
        kind: ConstraintKind::Eq,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Arrow, Monomial};
    use crate::rational::int;
    use std::collections::BTreeMap;

    fn p2() -> Quiver {
        let mut arrows = Vec::new();
        for v in ["x", "y", "z"] {
            arrows.push(Arrow::new(format!("2>1:{v}"), 2, 1).with_label(Monomial::var(v)));
            arrows.push(Arrow::new(format!("3>2:{v}"), 3, 2).with_label(Monomial::var(v)));
        }
        let gg = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
        let q = Quiver::new(3, arrows).unwrap();
        let rels = q.derive_binomial_relations().unwrap();
        q.with_relations(rels)
            .unwrap()
            .with_global_generation(gg)
            .unwrap()
    }

    fn point(q: &Quiver, a12: [i64; 3], a23: [i64; 3]) -> RepresentationPoint {
        let mut map = BTreeMap::new();
        for (k, v) in ["x", "y", "z"].iter().enumerate() {
            map.insert(format!("2>1:{v}"), int(a12[k]));
            map.insert(format!("3>2:{v}"), int(a23[k]));
        }
        RepresentationPoint::from_map(q, &map).unwrap()
    }

    fn sets(fam: &SupportFamily) -> Vec<Vec<usize>> {
        fam.to_vecs()
    }

    /// Independent oracle: S is a support iff no nonzero arrow leaves S.
    fn brute_supports(q: &Quiver, p: &RepresentationPoint) -> Vec<Vec<usize>> {
        let n = q.n();
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            let inside = |v: usize| mask >> (v - 1) & 1 == 1;
            let closed = q
                .arrows()
                .iter()
                .zip(p.values())
                .all(|(a, v)| v.is_zero() || !inside(a.source) || inside(a.target));
            if closed {
                out.push((1..=n).filter(|&v| inside(v)).collect::<Vec<_>>());
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    #[test]
    fn node_set_order() {
        let a = NodeSet::from_nodes([2]);
        let b = NodeSet::from_nodes([1, 3]);
        assert!(a < b);
        assert!(NodeSet::from_nodes([1, 2]) < b);
        assert_eq!(NodeSet::full(3).nodes(), vec![1, 2, 3]);
        assert_eq!(b.to_string(), "{1,3}");
    }

    #[test]
    fn supports_of_p2_points() {
        let q = p2();
        let generic = point(&q, [1, 2, 3], [1, 2, 3]);
        let fam = subrep_supports(&q, &generic).unwrap();
        assert_eq!(sets(&fam), vec![vec![], vec![1], vec![1, 2], vec![1, 2, 3]]);
        assert_eq!(sets(&fam), brute_supports(&q, &generic));

        let zero = RepresentationPoint::zero(&q);
        assert_eq!(subrep_supports(&q, &zero).unwrap().len(), 8);

        let half = point(&q, [0, 0, 0], [1, 2, 3]);
        let fam = subrep_supports(&q, &half).unwrap();
        assert_eq!(
            sets(&fam),
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![1, 2],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
        assert_eq!(sets(&fam), brute_supports(&q, &half));
    }

    #[test]
    fn closure_route_agrees() {
        let q = p2();
        for p in [
            point(&q, [1, 2, 3], [1, 2, 3]),
            point(&q, [0, 0, 0], [1, 0, 0]),
            point(&q, [1, 0, 0], [0, 0, 0]),
            RepresentationPoint::zero(&q),
        ] {
            assert_eq!(
                subrep_supports(&q, &p).unwrap(),
                supports_from_closures(&q, &p).unwrap()
            );
        }
    }

    #[test]
    fn enumeration_cap() {
        let q = Quiver::new(21, vec![]).unwrap();
        let p = RepresentationPoint::zero(&q);
        assert!(matches!(
            subrep_supports(&q, &p),
            Err(Error::CapacityExceeded { n: 21, cap: 20 })
        ));
        let small = Quiver::new(14, vec![]).unwrap();
        let p = RepresentationPoint::zero(&small);
        assert!(subrep_supports_with_cap(&small, &p, 13).is_err());
        assert_eq!(
            subrep_supports_with_cap(&small, &p, 14).unwrap().len(),
            1 << 14
        );
    }

    #[test]
    fn king_examples() {
        let q = p2();
        let p = point(&q, [1, 0, 0], [1, 0, 0]);
        let chi = Character::new(vec![-1, 0, 1]).unwrap();
        assert!(is_semistable(&q, &p, &Character::zero(3)).unwrap());
        assert!(is_semistable(&q, &p, &chi).unwrap());
        assert!(is_stable(&q, &p, &chi).unwrap());
        assert!(!is_stable(&q, &p, &Character::zero(3)).unwrap());

        let zero = RepresentationPoint::zero(&q);
        let report = stability_report(&q, &zero, &chi).unwrap();
        assert!(!report.semistable);
        assert_eq!(report.violating_support, Some(vec![3]));
    }

    #[test]
    fn strictly_semistable_reports_tight_support() {
        let q = p2();
        let p = point(&q, [1, 0, 0], [1, 0, 0]);
        let report = stability_report(&q, &p, &Character::zero(3)).unwrap();
        assert!(report.semistable && !report.stable);
        assert_eq!(report.violating_support, Some(vec![1]));
        let stable = stability_report(&q, &p, &Character::new(vec![-1, 0, 1]).unwrap()).unwrap();
        assert_eq!(stable.violating_support, None);
        assert_eq!(stable.supports_count, 4);
    }

    #[test]
    fn character_validation() {
        assert!(Character::new(vec![1, 0, 0]).is_err());
        assert!(Character::with_dimension_vector(vec![2, -1], vec![1, 2]).is_ok());
        assert!(Character::with_dimension_vector(vec![1, -1], vec![1, 0]).is_err());
        let q = p2();
        let p = RepresentationPoint::zero(&q);
        let odd = Character::with_dimension_vector(vec![2, 0, -1], vec![1, 1, 2]).unwrap();
        assert!(matches!(
            is_semistable(&q, &p, &odd),
            Err(Error::InvalidCharacter(_))
        ));
        assert!(is_semistable(&q, &p, &Character::zero(2)).is_err());
    }

    #[test]
    fn characters_from_weights() {
        let f1 = WeightMatrix::from_entries(4, &[(1, 1, 4), (1, 2, 3)]).unwrap();
        assert_eq!(character_from_weights(&f1).values(), &[-1, -1, 1, 1]);
        assert_eq!(
            character_from_weights(&WeightMatrix::zeros(3)).values(),
            &[0, 0, 0]
        );
        let p2 = WeightMatrix::from_entries(3, &[(1, 1, 3)]).unwrap();
        assert_eq!(character_from_weights(&p2).values(), &[-1, 0, 1]);
        assert!(WeightMatrix::from_entries(3, &[(1, 2, 2)]).is_err());
        assert!(WeightMatrix::from_entries(3, &[(1, 0, 2)]).is_err());
    }

    #[test]
    fn p2_certificates() {
        let q = p2();
        let m = WeightMatrix::from_entries(3, &[(1, 1, 3)]).unwrap();
        assert!(certify_good(&q, &m).unwrap().is_certified());
        assert!(certify_great(&q, &m).unwrap().is_certified());
        let none = WeightMatrix::zeros(3);
        assert!(certify_good(&q, &none).unwrap().is_certified());
        assert!(!certify_great(&q, &none).unwrap().is_certified());
        let bad = WeightMatrix::from_entries(3, &[(1, 3, 1)]).unwrap();
        assert_eq!(
            certify_good(&q, &bad).unwrap(),
            Certificate::Uncertified(Uncertified::NotGloballyGenerated { i: 3, j: 1 })
        );
        let no_gg = Quiver::new(3, vec![]).unwrap();
        assert!(matches!(
            certify_good(&no_gg, &m),
            Err(Error::MissingData(_))
        ));
    }

    #[test]
    fn cone_examples() {
        let only_trivial = SupportFamily::new(3, [NodeSet::empty(), NodeSet::full(3)]);
        let cone = stability_cone(&only_trivial);
        assert_eq!(cone.len(), 1);
        assert_eq!(cone[0].kind, ConstraintKind::Eq);

        let q = p2();
        let fam = subrep_supports(&q, &point(&q, [1, 2, 3], [1, 2, 3])).unwrap();
        let cone = stability_cone(&fam);
        let rendered: Vec<String> = cone.iter().map(ToString::to_string).collect();
        assert_eq!(
            rendered,
            vec!["chi1 <= 0", "chi1 + chi2 <= 0", "chi1 + chi2 + chi3 = 0"]
        );

        let two = Quiver::new(2, vec![]).unwrap();
        let fam = subrep_supports(&two, &RepresentationPoint::zero(&two)).unwrap();
        let cone = stability_cone(&fam);
        assert_eq!(cone.len(), 3);
        for chi in [[0, 0], [1, -1], [-1, 1]] {
            assert_eq!(cone.iter().all(|c| c.holds(&chi)), chi == [0, 0]);
        }
    }

    #[test]
    fn node_set_order_matches_sorted_lists() {
        let sets: Vec<NodeSet> = (0u64..1 << 6).map(NodeSet::from_bits).collect();
        for &a in &sets {
            for &b in &sets {
                let expected = a
                    .len()
                    .cmp(&b.len())
                    .then_with(|| a.nodes().cmp(&b.nodes()));
                assert_eq!(a.cmp(&b), expected, "{a} vs {b}");
            }
        }
    }
}
