//! Quivers with graded, monomial-labeled arrows and admissible relations.
//!
//! Nodes are numbered `1..=n`. An arrow from node `j` to node `i` stands for a
//! basis element of `Hom(E_i, E_j)`, so its value at a representation point is
//! the coordinate `a_ij`. Every other module inherits this convention.
//!
//! Arrows are kept sorted by id, so comparing paths by their arrow-index
//! sequence is the same as comparing them by arrow-id sequence.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::helix::PicVector;
use crate::rational::Rational;

/// A monomial in named Cox variables, e.g. `x*y^2`. The empty monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Self::from_exponents([(name, 1)])
    }

    pub fn from_exponents<'a>(exps: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (name, e) in exps {
            if e > 0 {
                *map.entry(name.to_string()).or_insert(0) += e;
            }
        }
        Monomial(map)
    }

    pub fn exponents(&self) -> &BTreeMap<String, u32> {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.0.clone();
        for (name, e) in &other.0 {
            *map.entry(name.clone()).or_insert(0) += e;
        }
        Monomial(map)
    }

    /// Evaluates at the given variable values; `None` if a variable has no value.
    pub fn evaluate<F>(&self, mut value: F) -> Option<Rational>
    where
        F: FnMut(&str) -> Option<Rational>,
    {
        let mut acc = Rational::one();
        for (name, &e) in &self.0 {
            let v = value(name)?;
            for _ in 0..e {
                acc *= &v;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, &e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => (
                    name.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in monomial `{s}`")))?,
                ),
                None => (factor, 1),
            };
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Parse(format!("bad variable name in monomial `{s}`")));
            }
            if e > 0 {
                *map.entry(name.to_string()).or_insert(0) += e;
            }
        }
        Ok(Monomial(map))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    /// Eigenvalue `r` of the `G_m` action on the corresponding Hom space.
    pub weight: u32,
    pub label: Option<Monomial>,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Arrow {
            id: id.into(),
            source,
            target,
            weight: 0,
            label: None,
        }
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_label(mut self, label: Monomial) -> Self {
        self.label = Some(label);
        self
    }
}

/// A path, stored as arrow indices in traversal order (first arrow leaves `source`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn empty(node: usize) -> Self {
        Path {
            source: node,
            target: node,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`; `None` unless `self` ends where `next` starts.
    pub fn concat(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }
}

/// A rational linear combination of paths with common endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rational, Path)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidRelation("no terms".into()));
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &terms {
            if p.source != s || p.target != t {
                return Err(Error::InvalidRelation(
                    "paths do not share source and target".into(),
                ));
            }
            if p.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "path of length {} (admissible relations need length >= 2)",
                    p.len()
                )));
            }
        }
        if terms.iter().all(|(c, _)| c.is_zero()) {
            return Err(Error::InvalidRelation("all coefficients are zero".into()));
        }
        Ok(Relation { terms })
    }

    /// The binomial `first - second`.
    pub fn binomial(first: Path, second: Path) -> Result<Self> {
        Relation::new(vec![(Rational::one(), first), (-Rational::one(), second)])
    }

    pub fn terms(&self) -> &[(Rational, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn negated(&self) -> Relation {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (-c, p.clone())).collect(),
        }
    }

    /// Terms merged and sorted by path, sign chosen so the leading coefficient is positive.
    pub fn canonical(&self) -> Relation {
        let mut merged: BTreeMap<Path, Rational> = BTreeMap::new();
        for (c, p) in &self.terms {
            *merged.entry(p.clone()).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Rational, Path)> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c, p))
            .collect();
        if terms.first().is_some_and(|(c, _)| c < &Rational::zero()) {
            for (c, _) in &mut terms {
                *c = -c.clone();
            }
        }
        Relation { terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingCertificate {
    /// Every arrow has positive degree, so the degree-zero part is spanned by the trivial paths.
    Pass,
    Fail {
        arrow: String,
        degree: i64,
    },
}

impl GradingCertificate {
    pub fn is_pass(&self) -> bool {
        matches!(self, GradingCertificate::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    gg: Option<Vec<Vec<bool>>>,
    pic: Option<Vec<PicVector>>,
    canonical: Option<PicVector>,
}

impl Quiver {
    pub fn new(n: usize, mut arrows: Vec<Arrow>) -> Result<Self> {
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in arrows.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateArrow(pair[0].id.clone()));
            }
        }
        for a in &arrows {
            check_node(a.source, n)?;
            check_node(a.target, n)?;
        }
        Ok(Quiver {
            n,
            arrows,
            relations: Vec::new(),
            gg: None,
            pic: None,
            canonical: None,
        })
    }

    pub fn with_relations(mut self, relations: Vec<Relation>) -> Result<Self> {
        for rel in &relations {
            for (_, p) in rel.terms() {
                self.validate_path(p)?;
            }
        }
        self.relations = relations;
        Ok(self)
    }

    /// Sets the table `gg[i][j]` = "`Hom(E_i, E_j)` is generated by global sections" (0-based storage).
    pub fn with_global_generation(mut self, gg: Vec<Vec<bool>>) -> Result<Self> {
        if gg.len() != self.n || gg.iter().any(|row| row.len() != self.n) {
            return Err(Error::DimensionMismatch(format!(
                "global-generation table must be {n}x{n}",
                n = self.n
            )));
        }
        self.gg = Some(gg);
        Ok(self)
    }

    pub fn with_picard(
        mut self,
        pic: Vec<PicVector>,
        canonical: Option<PicVector>,
    ) -> Result<Self> {
        if pic.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} Picard degrees, got {}",
                self.n,
                pic.len()
            )));
        }
        let rank = pic.first().map_or(0, PicVector::rank);
        if pic.iter().any(|p| p.rank() != rank)
            || canonical.as_ref().is_some_and(|k| k.rank() != rank)
        {
            return Err(Error::DimensionMismatch(
                "Picard degrees have different ranks".into(),
            ));
        }
        self.pic = Some(pic);
        self.canonical = canonical;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn global_generation(&self) -> Option<&[Vec<bool>]> {
        self.gg.as_deref()
    }

    /// `Hom(E_i, E_j)` generated by global sections, 1-based nodes.
    pub fn is_globally_generated(&self, i: usize, j: usize) -> Option<bool> {
        self.gg.as_ref().map(|gg| gg[i - 1][j - 1])
    }

    pub fn pic(&self) -> Option<&[PicVector]> {
        self.pic.as_deref()
    }

    pub fn canonical(&self) -> Option<&PicVector> {
        self.canonical.as_ref()
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .binary_search_by(|a| a.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownArrow(id.to_string()))
    }

    /// Builds a path from arrow ids in traversal order.
    pub fn path(&self, ids: &[&str]) -> Result<Path> {
        let indices = ids
            .iter()
            .map(|id| self.arrow_index(id))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_indices(indices)
    }

    pub fn path_from_indices(&self, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidPath(
                "a length-zero path needs an explicit node".into(),
            ));
        };
        let first = self
            .arrows
            .get(first)
            .ok_or_else(|| Error::UnknownArrow(format!("#{first}")))?;
        let path = Path {
            source: first.source,
            target: 0,
            arrows,
        };
        let target = self.walk(&path)?;
        Ok(Path { target, ..path })
    }

    pub fn path_ids(&self, path: &Path) -> Vec<&str> {
        path.arrows
            .iter()
            .map(|&i| self.arrows[i].id.as_str())
            .collect()
    }

    fn validate_path(&self, path: &Path) -> Result<()> {
        check_node(path.source, self.n)?;
        let end = self.walk(path)?;
        if end != path.target {
            return Err(Error::InvalidPath(format!(
                "path ends at {end}, not at {}",
                path.target
            )));
        }
        Ok(())
    }

    fn walk(&self, path: &Path) -> Result<usize> {
        let mut at = path.source;
        for &i in &path.arrows {
            let a = self
                .arrows
                .get(i)
                .ok_or_else(|| Error::UnknownArrow(format!("#{i}")))?;
            if a.source != at {
                return Err(Error::InvalidPath(format!(
                    "arrow `{}` leaves node {}, not node {at}",
                    a.id, a.source
                )));
            }
            at = a.target;
        }
        Ok(at)
    }

    /// Degree `source - target + n*r` of an arrow.
    pub fn arrow_degree(&self, id: &str) -> Result<i64> {
        let i = self.arrow_index(id)?;
        Ok(self.degree_of(&self.arrows[i]))
    }

    pub fn degree_of(&self, a: &Arrow) -> i64 {
        a.source as i64 - a.target as i64 + self.n as i64 * i64::from(a.weight)
    }

    pub fn path_degree(&self, path: &Path) -> i64 {
        path.arrows
            .iter()
            .map(|&i| self.degree_of(&self.arrows[i]))
            .sum()
    }

    pub fn path_weight(&self, path: &Path) -> u32 {
        path.arrows.iter().map(|&i| self.arrows[i].weight).sum()
    }

    /// Product of the arrow labels along a path.
    pub fn path_label(&self, path: &Path) -> Result<Monomial> {
        path.arrows.iter().try_fold(Monomial::one(), |acc, &i| {
            let a = &self.arrows[i];
            a.label
                .as_ref()
                .map(|l| acc.mul(l))
                .ok_or_else(|| Error::MissingLabel(a.id.clone()))
        })
    }

    pub fn grading_certificate(&self) -> GradingCertificate {
        match self.arrows.iter().find(|a| self.degree_of(a) <= 0) {
            None => GradingCertificate::Pass,
            Some(a) => GradingCertificate::Fail {
                arrow: a.id.clone(),
                degree: self.degree_of(a),
            },
        }
    }

    fn out_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n + 1];
        for (i, a) in self.arrows.iter().enumerate() {
            out[a.source].push(i);
        }
        out
    }

    /// All paths `from -> to` of length at most `max_len`, in lexicographic order of arrow ids.
    pub fn enumerate_paths(&self, from: usize, to: usize, max_len: usize) -> Result<Vec<Path>> {
        check_node(from, self.n)?;
        check_node(to, self.n)?;
        let out = self.out_arrows();
        let mut found = Vec::new();
        let mut stack = Vec::new();
        self.paths_dfs(&out, from, to, max_len, &mut stack, &mut found, from);
        found.sort();
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn paths_dfs(
        &self,
        out: &[Vec<usize>],
        at: usize,
        to: usize,
        remaining: usize,
        stack: &mut Vec<usize>,
        found: &mut Vec<Path>,
        from: usize,
    ) {
        if at == to {
            found.push(Path {
                source: from,
                target: to,
                arrows: stack.clone(),
            });
        }
        if remaining == 0 {
            return;
        }
        for &i in &out[at] {
            stack.push(i);
            self.paths_dfs(
                out,
                self.arrows[i].target,
                to,
                remaining - 1,
                stack,
                found,
                from,
            );
            stack.pop();
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.n + 1];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let out = self.out_arrows();
        let mut queue: VecDeque<usize> = (1..=self.n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &i in &out[v] {
                let t = self.arrows[i].target;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        seen == self.n
    }

    /// Path-length cap used by [`Quiver::derive_binomial_relations`]: every path of an
    /// acyclic quiver, one full turn around a cyclic one.
    pub fn default_relation_length(&self) -> usize {
        if self.is_acyclic() {
            self.n.saturating_sub(1).max(2)
        } else {
            self.n.max(2)
        }
    }

    pub fn derive_binomial_relations(&self) -> Result<Vec<Relation>> {
        self.derive_binomial_relations_up_to(self.default_relation_length())
    }

    /// Binomials `p - q` for every pair of paths with the same endpoints, the same
    /// total weight and the same label product, among paths of length `2..=max_len`.
    pub fn derive_binomial_relations_up_to(&self, max_len: usize) -> Result<Vec<Relation>> {
        if let Some(a) = self.arrows.iter().find(|a| a.label.is_none()) {
            return Err(Error::MissingLabel(a.id.clone()));
        }
        let mut out = Vec::new();
        for from in 1..=self.n {
            for to in 1..=self.n {
                let mut classes: BTreeMap<(u32, Monomial), Vec<Path>> = BTreeMap::new();
                for p in self.enumerate_paths(from, to, max_len)? {
                    if p.len() < 2 {
                        continue;
                    }
                    let key = (self.path_weight(&p), self.path_label(&p)?);
                    classes.entry(key).or_default().push(p);
                }
                for paths in classes.values() {
                    for (k, p) in paths.iter().enumerate() {
                        for q in &paths[k + 1..] {
                            out.push(Relation::binomial(p.clone(), q.clone())?);
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| relation_key(a).cmp(&relation_key(b)));
        out.dedup();
        Ok(out)
    }

    /// Number of distinct label monomials among paths `j -> i` of total weight `r`
    /// and length at most `max_len`: the dimension those paths span in `Hom(E_i, E_j)`.
    pub fn path_monomial_count(&self, i: usize, j: usize, r: u32, max_len: usize) -> Result<usize> {
        let mut seen = BTreeSet::new();
        for p in self.enumerate_paths(j, i, max_len)? {
            if self.path_weight(&p) == r {
                seen.insert(self.path_label(&p)?);
            }
        }
        Ok(seen.len())
    }
}

fn relation_key(r: &Relation) -> Vec<&Path> {
    r.terms.iter().map(|(_, p)| p).collect()
}

fn check_node(node: usize, n: usize) -> Result<()> {
    if node == 0 || node > n {
        Err(Error::NodeOutOfRange { node, n })
    } else {
        Ok(())
    }
}
