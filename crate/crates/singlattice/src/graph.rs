//! Resolution-graph data model and exact intersection arithmetic.
//!
//! A `ResolutionGraph` is the weighted dual graph of a resolution of a normal
//! surface singularity: vertices carry a self-intersection and a genus, edges
//! carry intersection multiplicities. Cycles are integer (or rational)
//! coefficient vectors over the declared vertex order. All arithmetic is
//! arbitrary-precision; there is no floating point anywhere in this module.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

/// One irreducible exceptional component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub id: String,
    pub self_intersection: BigInt,
    pub genus: BigInt,
    /// `false` marks a singular irreducible component; such a vertex is
    /// excluded as an almost-cone central-curve candidate.
    pub smooth: bool,
}

impl VertexData {
    pub fn new(id: impl Into<String>, self_intersection: i64, genus: i64) -> Self {
        VertexData {
            id: id.into(),
            self_intersection: BigInt::from(self_intersection),
            genus: BigInt::from(genus),
            smooth: true,
        }
    }
}

/// Weighted dual graph with its intersection form.
///
/// Vertex declaration order is the canonical coefficient order for cycles.
#[derive(Debug, Clone)]
pub struct ResolutionGraph {
    id: u64,
    vertices: Vec<VertexData>,
    /// (i, j) with i < j  ->  E_i.E_j >= 1
    edges: BTreeMap<(usize, usize), BigInt>,
    index: HashMap<String, usize>,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ResolutionGraph {
    /// Builds a graph from vertex data and edges given as (id, id, multiplicity).
    ///
    /// Structural invariants (unique ids, known endpoints, no self-loops,
    /// positive multiplicities, nonnegative genera) are enforced here;
    /// connectivity and negative definiteness are checked by [`Self::validate`].
    pub fn new(
        vertices: Vec<VertexData>,
        edges: Vec<(String, String, BigInt)>,
    ) -> Result<ResolutionGraph> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_token(&v.id) {
                return Err(Error::Validation(format!("invalid vertex id {:?}", v.id)));
            }
            if v.genus.is_negative() {
                return Err(Error::Validation(format!(
                    "vertex {} has negative genus",
                    v.id
                )));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let mut emap = BTreeMap::new();
        for (a, b, m) in edges {
            let i = *index
                .get(&a)
                .ok_or_else(|| Error::Validation(format!("edge references unknown id {:?}", a)))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| Error::Validation(format!("edge references unknown id {:?}", b)))?;
            if i == j {
                return Err(Error::Validation(format!("self-loop on vertex {:?}", a)));
            }
            if !m.is_positive() {
                return Err(Error::Validation(format!(
                    "edge {}-{} has nonpositive multiplicity",
                    a, b
                )));
            }
            let key = (i.min(j), i.max(j));
            if emap.insert(key, m).is_some() {
                return Err(Error::Validation(format!("repeated edge {}-{}", a, b)));
            }
        }
        Ok(ResolutionGraph {
            id: NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed),
            vertices,
            edges: emap,
            index,
        })
    }

    pub fn graph_id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexData {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.edges.iter().map(|(&(i, j), m)| (i, j, m))
    }

    /// Entry M_ij of the intersection matrix.
    pub fn form_entry(&self, i: usize, j: usize) -> BigInt {
        if i == j {
            self.vertices[i].self_intersection.clone()
        } else {
            let key = (i.min(j), i.max(j));
            self.edges.get(&key).cloned().unwrap_or_else(BigInt::zero)
        }
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in self.edges.keys() {
            if a == i {
                out.push(b);
            } else if b == i {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// k_i = K_X.E_i = -E_i^2 - 2 + 2 g_i (adjunction).
    pub fn canonical_degrees(&self) -> CanonicalDegrees {
        let k = self
            .vertices
            .iter()
            .map(|v| -&v.self_intersection - BigInt::from(2) + BigInt::from(2) * &v.genus)
            .collect();
        CanonicalDegrees { graph: self.id, k }
    }

    /// Connected components of the subgraph induced on `subset` (vertex
    /// indices, ascending within each component, components ordered by their
    /// smallest vertex).
    pub fn connected_components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut in_set = vec![false; self.len()];
        for &i in subset {
            in_set[i] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for &start in subset {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if in_set[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_subset_connected(&self, subset: &[usize]) -> bool {
        !subset.is_empty() && self.connected_components_of(subset).len() == 1
    }

    /// Checks connectivity and negative definiteness of the intersection form.
    ///
    /// Negative definiteness is decided in exact integer arithmetic: the k-th
    /// leading principal minor must have sign (-1)^k for every k (fraction-free
    /// Bareiss elimination).
    pub fn validate(&self) -> Validation {
        if self.is_empty() {
            return Validation::Invalid("graph has no vertices".into());
        }
        let all: Vec<usize> = (0..self.len()).collect();
        let comps = self.connected_components_of(&all);
        if comps.len() > 1 {
            let sets: Vec<String> = comps
                .iter()
                .map(|c| {
                    let ids: Vec<&str> = c.iter().map(|&i| self.vertices[i].id.as_str()).collect();
                    format!("{{{}}}", ids.join(","))
                })
                .collect();
            return Validation::Invalid(format!("graph is disconnected: {}", sets.join(" ")));
        }
        for k in 1..=self.len() {
            let minor = self.leading_principal_minor(k);
            let expect_negative = k % 2 == 1;
            let ok = if expect_negative {
                minor.is_negative()
            } else {
                minor.is_positive()
            };
            if !ok {
                return Validation::Invalid(format!(
                    "intersection form is not negative definite: leading principal minor {} is {} (expected sign {})",
                    k,
                    minor,
                    if expect_negative { "-" } else { "+" }
                ));
            }
        }
        Validation::Ok
    }

    /// Determinant of the k-th leading principal submatrix, by fraction-free
    /// Bareiss elimination.
    pub fn leading_principal_minor(&self, k: usize) -> BigInt {
        let mut m: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| self.form_entry(i, j)).collect())
            .collect();
        bareiss_determinant(&mut m)
    }

    /// Determinant of the principal submatrix indexed by `subset`.
    pub fn principal_minor(&self, subset: &[usize]) -> BigInt {
        let mut m: Vec<Vec<BigInt>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.form_entry(i, j)).collect())
            .collect();
        bareiss_determinant(&mut m)
    }

    pub fn zero_cycle(&self) -> Cycle {
        Cycle {
            graph: self.id,
            coeffs: vec![BigInt::zero(); self.len()],
        }
    }

    pub fn unit_cycle(&self, i: usize) -> Cycle {
        let mut c = self.zero_cycle();
        c.coeffs[i] = BigInt::one();
        c
    }

    pub fn cycle_from<I: Into<BigInt> + Clone>(&self, coeffs: &[I]) -> Result<Cycle> {
        if coeffs.len() != self.len() {
            return Err(Error::GraphMismatch);
        }
        Ok(Cycle {
            graph: self.id,
            coeffs: coeffs.iter().cloned().map(Into::into).collect(),
        })
    }

    /// Reduced cycle on a vertex subset (coefficient 1 exactly on `subset`).
    pub fn reduced_cycle(&self, subset: &[usize]) -> Cycle {
        let mut c = self.zero_cycle();
        for &i in subset {
            c.coeffs[i] = BigInt::one();
        }
        c
    }

    fn check(&self, c: &Cycle) -> Result<()> {
        if c.graph != self.id || c.coeffs.len() != self.len() {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }

    /// The vector (c.E_i)_i of pairings against every component.
    pub fn pairings(&self, c: &Cycle) -> Result<Vec<BigInt>> {
        self.check(c)?;
        let mut out = vec![BigInt::zero(); self.len()];
        for i in 0..self.len() {
            let mut acc = &c.coeffs[i] * &self.vertices[i].self_intersection;
            for (&(a, b), m) in &self.edges {
                if a == i {
                    acc += &c.coeffs[b] * m;
                } else if b == i {
                    acc += &c.coeffs[a] * m;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// a^T M b in exact arithmetic; symmetric and bilinear.
    pub fn intersection_number(&self, a: &Cycle, b: &Cycle) -> Result<BigInt> {
        self.check(a)?;
        self.check(b)?;
        let pb = self.pairings(b)?;
        Ok(a.coeffs.iter().zip(&pb).map(|(x, y)| x * y).sum())
    }

    /// chi(c) = -(c.c + k.c)/2; the sum is always even for valid adjunction data.
    pub fn euler_chi(&self, c: &Cycle) -> Result<BigInt> {
        self.check(c)?;
        let cc = self.intersection_number(c, c)?;
        let k = self.canonical_degrees();
        let kc: BigInt = k.k.iter().zip(&c.coeffs).map(|(x, y)| x * y).sum();
        let total = cc + kc;
        let two = BigInt::from(2);
        if (&total % &two) != BigInt::zero() {
            return Err(Error::InvariantViolation(format!(
                "c.c + k.c = {} is odd",
                total
            )));
        }
        Ok(-(total / two))
    }

    /// p_a(c) = 1 - chi(c).
    pub fn pa_cycle(&self, c: &Cycle) -> Result<BigInt> {
        Ok(BigInt::one() - self.euler_chi(c)?)
    }

    /// true iff l.E_i <= 0 for every i in `subset`.
    pub fn is_anti_nef_on(&self, l: &Cycle, subset: &[usize]) -> Result<bool> {
        let p = self.pairings(l)?;
        Ok(subset.iter().all(|&i| !p[i].is_positive()))
    }

    pub fn is_anti_nef(&self, l: &Cycle) -> Result<bool> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.is_anti_nef_on(l, &all)
    }

    /// The vertices pairing to zero with `l`, partitioned into connected
    /// components of the induced subgraph.
    pub fn orthogonal_components(&self, l: &Cycle) -> Result<Vec<Vec<usize>>> {
        let p = self.pairings(l)?;
        let zero: Vec<usize> = (0..self.len()).filter(|&i| p[i].is_zero()).collect();
        Ok(self.connected_components_of(&zero))
    }

    /// The vertex set L-perp = { i : l.E_i = 0 }.
    pub fn orthogonal_set(&self, l: &Cycle) -> Result<Vec<usize>> {
        let p = self.pairings(l)?;
        Ok((0..self.len()).filter(|&i| p[i].is_zero()).collect())
    }

    /// Blows up at a point of a component (`BlowUpSite::Vertex`) or at an
    /// intersection point of two components (`BlowUpSite::Edge`).
    ///
    /// Returns the new graph together with the total-transform map, which
    /// preserves the intersection form and chi.
    pub fn blow_up(&self, site: BlowUpSite) -> Result<BlowUp> {
        let mut e0 = String::from("E0");
        let mut n = 0;
        while self.index.contains_key(&e0) {
            n += 1;
            e0 = format!("E0_{}", n);
        }
        let mut vertices = self.vertices.clone();
        let mut edges: Vec<(String, String, BigInt)> = self
            .edges
            .iter()
            .map(|(&(i, j), m)| {
                (
                    self.vertices[i].id.clone(),
                    self.vertices[j].id.clone(),
                    m.clone(),
                )
            })
            .collect();
        let site_idx = match site {
            BlowUpSite::Vertex(ref id) => {
                let i = self
                    .vertex_index(id)
                    .ok_or_else(|| Error::Precondition(format!("unknown vertex {:?}", id)))?;
                vertices[i].self_intersection -= 1;
                edges.push((e0.clone(), id.clone(), BigInt::one()));
                SiteIdx::Vertex(i)
            }
            BlowUpSite::Edge(ref a, ref b) => {
                let i = self
                    .vertex_index(a)
                    .ok_or_else(|| Error::Precondition(format!("unknown vertex {:?}", a)))?;
                let j = self
                    .vertex_index(b)
                    .ok_or_else(|| Error::Precondition(format!("unknown vertex {:?}", b)))?;
                let key = (i.min(j), i.max(j));
                if !self.edges.contains_key(&key) {
                    return Err(Error::Precondition(format!("no edge {}-{}", a, b)));
                }
                vertices[i].self_intersection -= 1;
                vertices[j].self_intersection -= 1;
                for e in &mut edges {
                    if (e.0 == *a && e.1 == *b) || (e.0 == *b && e.1 == *a) {
                        e.2 -= 1;
                    }
                }
                edges.retain(|e| e.2.is_positive());
                edges.push((e0.clone(), a.clone(), BigInt::one()));
                edges.push((e0.clone(), b.clone(), BigInt::one()));
                SiteIdx::Edge(i, j)
            }
        };
        vertices.push(VertexData {
            id: e0,
            self_intersection: BigInt::from(-1),
            genus: BigInt::zero(),
            smooth: true,
        });
        let graph = ResolutionGraph::new(vertices, edges)?;
        Ok(BlowUp {
            old_id: self.id,
            graph,
            site: site_idx,
        })
    }

    /// The unique rational cycle c + sum a_i E_i (a_i over `contracted`)
    /// pairing to zero with every contracted vertex; `c` must be supported off
    /// `contracted`. Solved by exact rational elimination.
    pub fn numerical_pullback(&self, contracted: &[usize], c: &Cycle) -> Result<QCycle> {
        self.check(c)?;
        for &i in contracted {
            if !c.coeffs[i].is_zero() {
                return Err(Error::Precondition(format!(
                    "cycle has nonzero coefficient on contracted vertex {}",
                    self.vertices[i].id
                )));
            }
        }
        let n = contracted.len();
        // Solve M_cc x = -(M c)|contracted over the rationals.
        let p = self.pairings(c)?;
        let mut mat: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|s| BigRational::from(self.form_entry(contracted[r], contracted[s])))
                    .collect();
                row.push(BigRational::from(-p[contracted[r]].clone()));
                row
            })
            .collect();
        let sol = solve_rational(&mut mat).ok_or_else(|| {
            Error::InvariantViolation(
                "contracted intersection matrix is singular (not negative definite)".into(),
            )
        })?;
        let mut coeffs: Vec<BigRational> =
            c.coeffs.iter().map(|x| BigRational::from(x.clone())).collect();
        for (t, &i) in contracted.iter().enumerate() {
            coeffs[i] = sol[t].clone();
        }
        Ok(QCycle {
            graph: self.id,
            coeffs,
        })
    }

    /// Pairing vector of a rational cycle.
    pub fn pairings_rational(&self, c: &QCycle) -> Result<Vec<BigRational>> {
        if c.graph != self.id || c.coeffs.len() != self.len() {
            return Err(Error::GraphMismatch);
        }
        let mut out = vec![BigRational::zero(); self.len()];
        for i in 0..self.len() {
            let mut acc = &c.coeffs[i] * BigRational::from(self.vertices[i].self_intersection.clone());
            for (&(a, b), m) in &self.edges {
                let mq = BigRational::from(m.clone());
                if a == i {
                    acc += &c.coeffs[b] * &mq;
                } else if b == i {
                    acc += &c.coeffs[a] * &mq;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

/// Outcome of [`ResolutionGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Ok,
    Invalid(String),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowUpSite {
    Vertex(String),
    Edge(String, String),
}

#[derive(Debug, Clone, Copy)]
enum SiteIdx {
    Vertex(usize),
    Edge(usize, usize),
}

/// Result of a blow-up: the new graph and the total-transform map f*.
#[derive(Debug, Clone)]
pub struct BlowUp {
    old_id: u64,
    pub graph: ResolutionGraph,
    site: SiteIdx,
}

impl BlowUp {
    /// Total transform f*D: old coefficients kept, the new (-1)-vertex gets
    /// the coefficient of the blown-up component (vertex site) or the sum of
    /// the two (edge site).
    pub fn total_transform(&self, d: &Cycle) -> Result<Cycle> {
        if d.graph != self.old_id || d.coeffs.len() + 1 != self.graph.len() {
            return Err(Error::GraphMismatch);
        }
        let mut coeffs = d.coeffs.clone();
        let extra = match self.site {
            SiteIdx::Vertex(i) => d.coeffs[i].clone(),
            SiteIdx::Edge(i, j) => &d.coeffs[i] + &d.coeffs[j],
        };
        coeffs.push(extra);
        Ok(Cycle {
            graph: self.graph.id,
            coeffs,
        })
    }
}

/// Integer coefficient vector over a graph's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    graph: u64,
    coeffs: Vec<BigInt>,
}

impl Cycle {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub(crate) fn set_coeff(&mut self, i: usize, v: BigInt) {
        self.coeffs[i] = v;
    }

    /// all coefficients >= 0 and some > 0
    pub fn is_positive(&self) -> bool {
        self.is_effective() && !self.is_zero()
    }

    /// all coefficients >= 0
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// nonzero coefficients all equal 1
    pub fn is_reduced(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    /// componentwise <=
    pub fn le(&self, other: &Cycle) -> bool {
        self.graph == other.graph
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        debug_assert_eq!(self.graph, other.graph);
        Cycle {
            graph: self.graph,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cycle) -> Cycle {
        debug_assert_eq!(self.graph, other.graph);
        Cycle {
            graph: self.graph,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, m: &BigInt) -> Cycle {
        Cycle {
            graph: self.graph,
            coeffs: self.coeffs.iter().map(|a| a * m).collect(),
        }
    }

    pub fn neg(&self) -> Cycle {
        Cycle {
            graph: self.graph,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// The reduced cycle on the same support.
    pub fn reduced(&self, g: &ResolutionGraph) -> Cycle {
        g.reduced_cycle(&self.support())
    }

    /// `id:coef` pairs (nonzero coefficients only) in declaration order.
    pub fn display(&self, g: &ResolutionGraph) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("{}:{}", g.vertex(i).id, self.coeffs[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Rational coefficient vector (pullback results).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCycle {
    graph: u64,
    coeffs: Vec<BigRational>,
}

impl QCycle {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_cycle(c: &Cycle) -> QCycle {
        QCycle {
            graph: c.graph,
            coeffs: c
                .coeffs
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect(),
        }
    }

    /// Back to an integer cycle if every coefficient is integral.
    pub fn to_cycle(&self) -> Option<Cycle> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(Cycle {
            graph: self.graph,
            coeffs,
        })
    }

    pub fn display(&self, g: &ResolutionGraph) -> String {
        let parts: Vec<String> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| format!("{}:{}", g.vertex(i).id, self.coeffs[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// K_X restricted to the exceptional lattice, as the vector k_i = K_X.E_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDegrees {
    graph: u64,
    pub k: Vec<BigInt>,
}

/// Fraction-free Bareiss determinant; consumes the matrix.
pub fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Gaussian elimination over the rationals on an augmented n x (n+1) matrix.
/// Returns None if the system matrix is singular.
fn solve_rational(mat: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let p = mat[col][col].clone();
        for j in col..=n {
            mat[col][j] = &mat[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for j in col..=n {
                    let delta = &f * &mat[col][j];
                    mat[r][j] = &mat[r][j] - delta;
                }
            }
        }
    }
    Some((0..n).map(|r| mat[r][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_graph;

    fn fig2() -> ResolutionGraph {
        parse_graph(
            "v F0 sq=-2 g=1\nv F1 sq=-2\nv F2 sq=-2\nv F3 sq=-2\n\
             e F0 F1\ne F0 F2\ne F0 F3\n",
        )
        .unwrap()
        .0
    }

    fn fig1(p: i64, m: usize) -> ResolutionGraph {
        let mut s = format!("v E1 sq=-1 g={}\n", p);
        for i in 2..=m {
            s += &format!("v E{} sq=-2\n", i);
        }
        for i in 1..m {
            s += &format!("e E{} E{}\n", i, i + 1);
        }
        parse_graph(&s).unwrap().0
    }

    #[test]
    fn validate_single_vertices() {
        let g = parse_graph("v a sq=-2").unwrap().0;
        assert!(g.validate().is_ok());
        let g = parse_graph("v a sq=0").unwrap().0;
        assert!(!g.validate().is_ok());
    }

    #[test]
    fn validate_zero_minor() {
        // two (-2)-vertices joined with multiplicity 2: det = 4 - 4 = 0
        let g = parse_graph("v a sq=-2\nv b sq=-2\ne a b m=2").unwrap().0;
        match g.validate() {
            Validation::Invalid(msg) => assert!(msg.contains("minor 2")),
            Validation::Ok => panic!("expected failure"),
        }
    }

    #[test]
    fn validate_disconnected() {
        let g = parse_graph("v a sq=-2\nv b sq=-2").unwrap().0;
        match g.validate() {
            Validation::Invalid(msg) => assert!(msg.contains("disconnected")),
            Validation::Ok => panic!("expected failure"),
        }
    }

    #[test]
    fn intersection_fig2() {
        let g = fig2();
        let zf = g.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        let f0 = g.unit_cycle(0);
        assert_eq!(g.intersection_number(&zf, &f0).unwrap(), BigInt::from(-1));
        let zero = g.zero_cycle();
        assert_eq!(g.intersection_number(&zf, &zero).unwrap(), BigInt::zero());
    }

    #[test]
    fn intersection_fig1() {
        let g = fig1(2, 3);
        let e = g.cycle_from(&[1i64, 1, 1]).unwrap();
        let e1 = g.unit_cycle(0);
        assert_eq!(g.intersection_number(&e, &e1).unwrap(), BigInt::zero());
    }

    #[test]
    fn canonical_degrees_examples() {
        let g = fig2();
        let k = g.canonical_degrees();
        assert_eq!(
            k.k,
            vec![BigInt::from(2), BigInt::zero(), BigInt::zero(), BigInt::zero()]
        );
        let g = parse_graph("v a sq=-2").unwrap().0;
        assert_eq!(g.canonical_degrees().k, vec![BigInt::zero()]);
        // Fig 3
        let g = parse_graph(
            "v E1 sq=-2\nv E2 sq=-3\nv E3 sq=-1 g=1\nv E4 sq=-1 g=1\n\
             e E1 E2\ne E2 E3\ne E2 E4\n",
        )
        .unwrap()
        .0;
        assert_eq!(
            g.canonical_degrees().k,
            vec![BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn chi_examples() {
        let g = fig2();
        let zf = g.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        assert_eq!(g.euler_chi(&zf).unwrap(), BigInt::from(-1));
        assert_eq!(g.pa_cycle(&zf).unwrap(), BigInt::from(2));

        let g = parse_graph("v a sq=-2").unwrap().0;
        let c = g.unit_cycle(0);
        assert_eq!(g.euler_chi(&c).unwrap(), BigInt::one());

        // degree-4 plane curve cone: sq=-4, g=3
        let g = parse_graph("v a sq=-4 g=3").unwrap().0;
        let c = g.unit_cycle(0);
        assert_eq!(g.euler_chi(&c).unwrap(), BigInt::from(-2));
        assert_eq!(g.pa_cycle(&c).unwrap(), BigInt::from(3));
    }

    #[test]
    fn anti_nef_examples() {
        let g = fig2();
        let all: Vec<usize> = (0..4).collect();
        let zf = g.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        assert!(g.is_anti_nef_on(&zf, &all).unwrap());
        let red = g.cycle_from(&[1i64, 1, 1, 1]).unwrap();
        assert!(!g.is_anti_nef_on(&red, &all).unwrap());
        assert!(g.is_anti_nef(&g.zero_cycle()).unwrap());
    }

    #[test]
    fn orthogonal_components_examples() {
        let g = fig1(1, 3);
        let e = g.cycle_from(&[1i64, 1, 1]).unwrap();
        let l = e.neg();
        assert_eq!(g.orthogonal_components(&l).unwrap(), vec![vec![0, 1]]);

        let g2 = fig2();
        let zf = g2.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        let comps = g2.orthogonal_components(&zf.neg()).unwrap();
        assert_eq!(comps, vec![vec![1], vec![2], vec![3]]);

        let g3 = parse_graph("v a sq=-2").unwrap().0;
        let l = g3.unit_cycle(0).neg();
        assert!(g3.orthogonal_components(&l).unwrap().is_empty());
    }

    #[test]
    fn blow_up_vertex() {
        let g = parse_graph("v a sq=-2").unwrap().0;
        let bu = g.blow_up(BlowUpSite::Vertex("a".into())).unwrap();
        assert_eq!(bu.graph.len(), 2);
        assert_eq!(bu.graph.vertex(0).self_intersection, BigInt::from(-3));
        assert_eq!(bu.graph.vertex(1).self_intersection, BigInt::from(-1));
        let d = g.unit_cycle(0);
        let fd = bu.total_transform(&d).unwrap();
        assert_eq!(fd.coeffs(), &[BigInt::one(), BigInt::one()]);
        assert_eq!(
            bu.graph.euler_chi(&fd).unwrap(),
            g.euler_chi(&d).unwrap()
        );
    }

    #[test]
    fn blow_up_preserves_chi_and_form() {
        let g = fig2();
        let zf = g.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        for site in [
            BlowUpSite::Vertex("F0".into()),
            BlowUpSite::Edge("F0".into(), "F1".into()),
        ] {
            let bu = g.blow_up(site).unwrap();
            assert!(bu.graph.validate().is_ok());
            let fzf = bu.total_transform(&zf).unwrap();
            assert_eq!(bu.graph.euler_chi(&fzf).unwrap(), BigInt::from(-1));
            let d2 = g.cycle_from(&[1i64, 0, 2, 1]).unwrap();
            let fd2 = bu.total_transform(&d2).unwrap();
            assert_eq!(
                bu.graph.intersection_number(&fzf, &fd2).unwrap(),
                g.intersection_number(&zf, &d2).unwrap()
            );
        }
    }

    #[test]
    fn pullback_examples() {
        // identity on empty contraction
        let g = fig1(1, 3);
        let c = g.cycle_from(&[3i64, 0, 0]).unwrap();
        let q = g.numerical_pullback(&[], &c).unwrap();
        assert_eq!(q, QCycle::from_cycle(&c));

        // contract {E2,E3}, c = 3 E1 -> (3,2,1)
        let q = g.numerical_pullback(&[1, 2], &c).unwrap();
        let expect = g.cycle_from(&[3i64, 2, 1]).unwrap();
        assert_eq!(q, QCycle::from_cycle(&expect));

        // contract {E3}, c = E2 -> coefficient 1/2 on E3
        let c = g.unit_cycle(1);
        let q = g.numerical_pullback(&[2], &c).unwrap();
        assert_eq!(
            q.coeffs()[2],
            BigRational::new(BigInt::one(), BigInt::from(2))
        );

        // error when supported on the contracted set
        let c = g.unit_cycle(2);
        assert!(g.numerical_pullback(&[2], &c).is_err());
    }

    #[test]
    fn pullback_round_trip() {
        let g = fig2();
        // Z_f pairs to zero with F1,F2,F3
        let zf = g.cycle_from(&[2i64, 1, 1, 1]).unwrap();
        let p = g.pairings(&zf).unwrap();
        assert!(p[1].is_zero() && p[2].is_zero() && p[3].is_zero());
        let mut restricted = zf.clone();
        for i in [1, 2, 3] {
            restricted.set_coeff(i, BigInt::zero());
        }
        let q = g.numerical_pullback(&[1, 2, 3], &restricted).unwrap();
        assert_eq!(q, QCycle::from_cycle(&zf));
    }
}
