//! Building sets of biconnected induced subgraphs, nests, diagonal
//! dimensions and nest weights, the Grothendieck-class shadow of the
//! motive of the wonderful compactification, singularity orders, and
//! convergence checks at infinity.

use crate::error::Error;
use crate::graph::{induced_subgraphs, is_biconnected, quotient, Graph, InducedSubgraph};
use crate::Result;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

/// Integer polynomial in the Lefschetz class `L`, the value of a
/// Grothendieck-ring class of a mixed Tate motive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TatePolynomial {
    /// exponent -> coefficient, finitely supported, no zero entries
    coeffs: BTreeMap<u32, i128>,
}

impl TatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        let mut p = Self::default();
        p.set(0, c);
        p
    }

    /// The class `L^k`.
    pub fn lefschetz(k: u32) -> Self {
        let mut p = Self::default();
        p.set(k, 1);
        p
    }

    pub fn set(&mut self, exp: u32, c: i128) {
        if c == 0 {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: u32) -> i128 {
        *self.coeffs.get(&exp).unwrap_or(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> i128 {
        self.degree().map(|d| self.coeff(d)).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at an integer point (exact).
    pub fn eval(&self, l: i128) -> i128 {
        let mut acc: i128 = 0;
        let deg = self.degree().unwrap_or(0);
        for e in (0..=deg).rev() {
            acc = acc * l + self.coeff(e);
        }
        acc
    }

    /// Parse the canonical textual form, e.g. `1 + 2*L + L^3`.
    /// Accepts signs, optional `*`, and bare `L` for `L^1`.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::default();
        // split into signed terms
        let mut terms: Vec<(i128, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i128;
        let mut chars = cleaned.chars().peekable();
        if chars.peek() == Some(&'+') {
            chars.next();
        } else if chars.peek() == Some(&'-') {
            sign = -1;
            chars.next();
        }
        for c in chars {
            if c == '+' || c == '-' {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if c == '+' { 1 } else { -1 };
            } else {
                cur.push(c);
            }
        }
        terms.push((sign, cur));
        for (sign, term) in terms {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let (coeff, exp) = parse_term(&term)?;
            let prev = out.coeff(exp);
            out.set(exp, prev + sign * coeff);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(i128, u32)> {
    // forms: "5", "L", "L^3", "2*L", "2L^3", "2*L^3"
    if let Some(pos) = term.find(['L', 'l']) {
        let coeff_part = &term[..pos];
        let coeff: i128 = if coeff_part.is_empty() {
            1
        } else {
            let c = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
            c.parse().map_err(|_| Error::Parse(format!("bad coefficient {coeff_part:?}")))?
        };
        let rest = &term[pos + 1..];
        let exp: u32 = if rest.is_empty() {
            1
        } else if let Some(e) = rest.strip_prefix('^') {
            e.parse().map_err(|_| Error::Parse(format!("bad exponent {rest:?}")))?
        } else {
            return Err(Error::Parse(format!("malformed term {term:?}")));
        };
        Ok((coeff, exp))
    } else {
        let c: i128 =
            term.parse().map_err(|_| Error::Parse(format!("bad constant {term:?}")))?;
        Ok((c, 0))
    }
}

impl fmt::Display for TatePolynomial {
    /// Canonical ascending-exponent form: `1 + 2*L + L^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "L")?,
                (1, m) => write!(f, "{m}*L")?,
                (_, 1) => write!(f, "L^{e}")?,
                (_, m) => write!(f, "{m}*L^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &TatePolynomial {
    type Output = TatePolynomial;
    fn add(self, rhs: &TatePolynomial) -> TatePolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            let prev = out.coeff(e);
            out.set(e, prev + c);
        }
        out
    }
}

impl Mul for &TatePolynomial {
    type Output = TatePolynomial;
    fn mul(self, rhs: &TatePolynomial) -> TatePolynomial {
        let mut out = TatePolynomial::default();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                let prev = out.coeff(e1 + e2);
                out.set(e1 + e2, prev + c1 * c2);
            }
        }
        out
    }
}

/// The building set: all biconnected induced subgraphs with at least
/// one edge, ordered by (vertex count, vertex set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingSet {
    pub elements: Vec<InducedSubgraph>,
}

pub fn building_set(g: &Graph) -> Result<BuildingSet> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut elements = Vec::new();
    for sub in induced_subgraphs(g, None) {
        if sub.edge_count() == 0 {
            continue;
        }
        if is_biconnected(&sub.to_graph(g))? {
            elements.push(sub);
        }
    }
    elements.sort_by_key(|s| (s.vertex_count(), s.vertices.clone()));
    Ok(BuildingSet { elements })
}

/// A nest: a set of building-set elements (referenced by index) that
/// pairwise are disjoint, meet in a single vertex, or are nested.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GNest {
    pub elements: Vec<usize>,
}

/// Pairwise nest condition for two vertex sets.
fn nest_compatible(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    let inter: BTreeSet<usize> = a.intersection(b).copied().collect();
    if inter.is_empty() || inter.len() == 1 {
        return true;
    }
    inter.len() == a.len() || inter.len() == b.len()
}

/// All nonempty nests, by backtracking over the ordered building set.
pub fn enumerate_gnests(g: &Graph) -> Result<(BuildingSet, Vec<GNest>)> {
    let bs = building_set(g)?;
    let sets: Vec<BTreeSet<usize>> = bs.elements.iter().map(|s| s.vertex_set()).collect();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        sets: &[BTreeSet<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<GNest>,
    ) {
        for i in start..sets.len() {
            if cur.iter().all(|&j| nest_compatible(&sets[i], &sets[j])) {
                cur.push(i);
                out.push(GNest { elements: cur.clone() });
                rec(i + 1, sets, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, &sets, &mut cur, &mut out);
    out.sort();
    Ok((bs, out))
}

/// Dimension of the polydiagonal of an induced subgraph inside
/// `Z^{V}` with `Z = X x X`: `dimX * (2n - |V_gamma| + b0(gamma))`.
pub fn diagonal_dimension(g: &Graph, gamma: &InducedSubgraph, dim_x: u32) -> Result<i64> {
    if dim_x < 1 {
        return Err(Error::InvalidDimension("dimX >= 1 expected".into()));
    }
    gamma.validate(g)?;
    let n = g.vertex_count() as i64;
    let b0 = if gamma.vertex_count() == 0 { 0 } else { gamma.component_count(g) as i64 };
    Ok(dim_x as i64 * (2 * n - gamma.vertex_count() as i64 + b0))
}

/// Per-element weights `r_gamma` of a nest, the index ranges of `M_N`,
/// and the vertex count of the quotient by the nest union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestWeight {
    pub nest: GNest,
    /// `(element index, r_gamma)` in nest order.
    pub per_element: Vec<(usize, i64)>,
    pub quotient_vertex_count: usize,
}

impl NestWeight {
    /// Number of tuples in `M_N`, i.e. `prod (r_gamma - 1)`.
    pub fn index_count(&self) -> i64 {
        self.per_element.iter().map(|&(_, r)| (r - 1).max(0)).product()
    }
}

/// Union of a family of induced subgraphs as a (not necessarily
/// induced) subgraph: vertex set union and edge-index union.
fn union_subgraph(parts: &[&InducedSubgraph]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    for p in parts {
        vs.extend(p.vertices.iter().copied());
        es.extend(p.edges.iter().copied());
    }
    (vs, es)
}

/// Connected components of an explicit subgraph (vertex set + edges).
fn subgraph_b0(g: &Graph, vs: &BTreeSet<usize>, es: &BTreeSet<usize>) -> usize {
    let verts: Vec<usize> = vs.iter().copied().collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for &e in es {
        let (a, b) = g.edges()[e];
        let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..verts.len() {
        roots.insert(find(&mut parent, i));
    }
    roots.len()
}

/// Weights of a nest: for each element, `r_gamma` is the dimension of
/// the intersection of the diagonals of its proper sub-elements (the
/// ambient `Z^{V}` when there are none) minus its own diagonal
/// dimension. The intersection of diagonals is the diagonal of the
/// union subgraph, whose components index the identified clusters.
pub fn nest_weights(
    g: &Graph,
    bs: &BuildingSet,
    nest: &GNest,
    dim_x: u32,
) -> Result<NestWeight> {
    let n = g.vertex_count() as i64;
    let elements: Vec<&InducedSubgraph> =
        nest.elements.iter().map(|&i| &bs.elements[i]).collect();
    let mut per_element = Vec::new();
    for (slot, gamma) in elements.iter().enumerate() {
        let gamma_set = gamma.vertex_set();
        let proper: Vec<&InducedSubgraph> = elements
            .iter()
            .filter(|other| {
                let os = other.vertex_set();
                os.is_subset(&gamma_set) && os.len() < gamma_set.len()
            })
            .copied()
            .collect();
        let inter_dim = if proper.is_empty() {
            dim_x as i64 * 2 * n
        } else {
            let (vs, es) = union_subgraph(&proper);
            let b0 = subgraph_b0(g, &vs, &es) as i64;
            dim_x as i64 * (2 * n - vs.len() as i64 + b0)
        };
        let b0_gamma = gamma.component_count(g) as i64;
        let own = dim_x as i64 * (2 * n - gamma.vertex_count() as i64 + b0_gamma);
        per_element.push((nest.elements[slot], inter_dim - own));
    }
    let (vs, es) = union_subgraph(&elements);
    let b0 = subgraph_b0(g, &vs, &es);
    let quotient_vertex_count = g.vertex_count() - vs.len() + b0;
    Ok(NestWeight { nest: nest.clone(), per_element, quotient_vertex_count })
}

/// Grothendieck-class of the wonderful compactification:
/// `[Z^{V}] + sum_{nests N} sum_{mu in M_N} [X]^{|V(G/delta_N)| + |V|} L^{|mu|}`
/// with `[Z^{V}] = xClass^{2|V|}`. Nests whose `M_N` is empty
/// contribute nothing.
pub fn motive_class(g: &Graph, x_class: &TatePolynomial, dim_x: u32) -> Result<TatePolynomial> {
    let (bs, nests) = enumerate_gnests(g)?;
    let n = g.vertex_count() as u32;
    let mut total = x_class.pow(2 * n);
    for nest in &nests {
        let w = nest_weights(g, &bs, nest, dim_x)?;
        if w.index_count() == 0 {
            continue;
        }
        // sum over mu in M_N of L^{|mu|} factorizes per element
        let mut l_factor = TatePolynomial::one();
        for &(_, r) in &w.per_element {
            let mut geom = TatePolynomial::zero();
            for mu in 1..r {
                geom = &geom + &TatePolynomial::lefschetz(mu as u32);
            }
            l_factor = &l_factor * &geom;
        }
        let power = w.quotient_vertex_count as u32 + n;
        total = &total + &(&x_class.pow(power) * &l_factor);
    }
    Ok(total)
}

/// Independent route for the single-blowup sanity case: a graph whose
/// building set is one element `gamma = Gamma` biconnected. Blowing up
/// `Z^{V}` along the diagonal of codimension `c` gives
/// `x^{2n} + x^{n_quot + n} (L + ... + L^{c-1})`.
pub fn single_blowup_class(
    g: &Graph,
    x_class: &TatePolynomial,
    dim_x: u32,
) -> Result<TatePolynomial> {
    let n = g.vertex_count() as u32;
    let whole = InducedSubgraph::new(g, &(0..g.vertex_count()).collect())?;
    if !is_biconnected(g)? {
        return Err(Error::NotBiconnected);
    }
    let ambient = dim_x as i64 * 2 * n as i64;
    let codim = ambient - diagonal_dimension(g, &whole, dim_x)?;
    let quot = quotient(g, &whole)?;
    let mut total = x_class.pow(2 * n);
    let center = x_class.pow(quot.vertex_count() as u32 + n);
    for k in 1..codim {
        total = &total + &(&center * &TatePolynomial::lefschetz(k as u32));
    }
    Ok(total)
}

/// Order of the singularity of the pulled-back amplitude form along
/// the exceptional divisor of the blowup at a biconnected `gamma`:
/// `(D-2)|E| - 2D(|V|-1) + 2`, cross-checked against the equivalent
/// Betti form `2D b1 - (D+2)|E| + 2`.
pub fn singularity_order(g: &Graph, gamma: &InducedSubgraph, d: u32) -> Result<i64> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidDimension(format!("even D >= 2 expected, got {d}")));
    }
    gamma.validate(g)?;
    let as_graph = gamma.to_graph(g);
    if !is_biconnected(&as_graph)? {
        return Err(Error::NotBiconnected);
    }
    let (e, v) = (gamma.edge_count() as i64, gamma.vertex_count() as i64);
    let d = d as i64;
    let direct = (d - 2) * e - 2 * d * (v - 1) + 2;
    let b1 = as_graph.betti_one() as i64;
    let via_betti = 2 * d * b1 - (d + 2) * e + 2;
    debug_assert_eq!(direct, via_betti);
    if direct != via_betti {
        return Err(Error::InvalidGraph("singularity order forms disagree".into()));
    }
    Ok(direct)
}

/// The three convergence-at-infinity conditions with their evaluated
/// left-hand sides.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConvergenceReport {
    /// `2D - 3 > 1`
    pub infinity_direction: (i64, bool),
    /// per vertex: `(2D-2) v(v) - D + 1 > 1`
    pub per_vertex: Vec<(String, i64, bool)>,
    /// `(2D-2) v_Gamma - D |V| > 0`
    pub all_radii: (i64, bool),
    pub all_pass: bool,
}

pub fn convergence_report(g: &Graph, d: u32) -> Result<ConvergenceReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let d = d as i64;
    let c1 = 2 * d - 3;
    let mut per_vertex = Vec::new();
    let mut total_valence = 0i64;
    for v in 0..g.vertex_count() {
        let val = g.valence(v) as i64;
        total_valence += val;
        let lhs = (2 * d - 2) * val - d + 1;
        per_vertex.push((g.label(v).to_string(), lhs, lhs > 1));
    }
    let c3 = (2 * d - 2) * total_valence - d * g.vertex_count() as i64;
    let all_pass = c1 > 1 && per_vertex.iter().all(|&(_, _, ok)| ok) && c3 > 0;
    Ok(ConvergenceReport {
        infinity_direction: (c1, c1 > 1),
        per_vertex,
        all_radii: (c3, c3 > 0),
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::census::*;

    #[test]
    fn tate_polynomial_ring() {
        let p = TatePolynomial::parse("1 + 2*L + L^3").unwrap();
        assert_eq!(p.to_string(), "1 + 2*L + L^3");
        assert_eq!(p.coeff(1), 2);
        let q = TatePolynomial::parse("1+L").unwrap();
        assert_eq!((&q * &q).to_string(), "1 + 2*L + L^2");
        assert_eq!(q.pow(0), TatePolynomial::one());
        assert_eq!(TatePolynomial::parse("-L^2 + 3").unwrap().to_string(), "3 - L^2");
        assert_eq!(TatePolynomial::parse("L - L").unwrap(), TatePolynomial::zero());
        assert!(TatePolynomial::parse("1 + 2x").is_err());
        let round = TatePolynomial::parse(&p.to_string()).unwrap();
        assert_eq!(p, round);
    }

    #[test]
    fn building_sets() {
        let t = triangle();
        let bs = building_set(&t).unwrap();
        assert_eq!(bs.elements.len(), 4); // 3 edges + the whole triangle
        assert_eq!(building_set(&single_edge()).unwrap().elements.len(), 1);
        let p = building_set(&path3()).unwrap();
        assert_eq!(p.elements.len(), 2);
        assert_eq!(building_set(&banana3()).unwrap().elements.len(), 1);
    }

    #[test]
    fn nest_enumeration() {
        assert_eq!(enumerate_gnests(&single_edge()).unwrap().1.len(), 1);
        assert_eq!(enumerate_gnests(&triangle()).unwrap().1.len(), 15);
        assert_eq!(enumerate_gnests(&path3()).unwrap().1.len(), 3);
        assert_eq!(enumerate_gnests(&banana3()).unwrap().1.len(), 1);
    }

    #[test]
    fn nests_closed_under_subsets() {
        let (bs, nests) = enumerate_gnests(&triangle()).unwrap();
        // every singleton is a nest
        for i in 0..bs.elements.len() {
            assert!(nests.iter().any(|n| n.elements == vec![i]));
        }
        // subsets of nests are nests
        let listed: BTreeSet<Vec<usize>> = nests.iter().map(|n| n.elements.clone()).collect();
        for n in &nests {
            if n.elements.len() > 1 {
                for skip in 0..n.elements.len() {
                    let mut sub = n.elements.clone();
                    sub.remove(skip);
                    assert!(listed.contains(&sub));
                }
            }
        }
    }

    #[test]
    fn diagonal_dimensions() {
        let t = triangle();
        let e = InducedSubgraph::new(&t, &[0usize, 1].into_iter().collect()).unwrap();
        assert_eq!(diagonal_dimension(&t, &e, 4).unwrap(), 20);
        let whole = InducedSubgraph::new(&t, &[0usize, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(diagonal_dimension(&t, &whole, 1).unwrap(), 4);
        assert_eq!(diagonal_dimension(&t, &InducedSubgraph::empty(), 1).unwrap(), 6);
        assert!(diagonal_dimension(&t, &e, 0).is_err());
    }

    #[test]
    fn nest_weight_examples() {
        let t = triangle();
        let (bs, _) = enumerate_gnests(&t).unwrap();
        let d = 5u32;
        // elements sorted by (size, vertex set): 0:{a,b} 1:{a,c} 2:{b,c} 3:{a,b,c}
        let single = GNest { elements: vec![0] };
        let w = nest_weights(&t, &bs, &single, d).unwrap();
        assert_eq!(w.per_element, vec![(0, d as i64)]);
        assert_eq!(w.quotient_vertex_count, 2);

        let pair = GNest { elements: vec![0, 3] };
        let w = nest_weights(&t, &bs, &pair, d).unwrap();
        assert_eq!(w.per_element, vec![(0, d as i64), (3, d as i64)]);
        assert_eq!(w.quotient_vertex_count, 1);

        let se = single_edge();
        let (bs_e, nests_e) = enumerate_gnests(&se).unwrap();
        let w = nest_weights(&se, &bs_e, &nests_e[0], d).unwrap();
        assert_eq!(w.per_element, vec![(0, d as i64)]);
    }

    #[test]
    fn nest_weights_maximal_chain() {
        // r along a chain e subset gamma2 subset ... is dimX * (|V_{i+1}| - |V_i|)
        let p4 = polygon(4);
        let (bs, nests) = enumerate_gnests(&p4).unwrap();
        for nest in &nests {
            let w = nest_weights(&p4, &bs, nest, 3).unwrap();
            // verify chain subfamilies
            let sets: Vec<BTreeSet<usize>> =
                nest.elements.iter().map(|&i| bs.elements[i].vertex_set()).collect();
            for (slot, &(_, r)) in w.per_element.iter().enumerate() {
                let mine = &sets[slot];
                let below: Vec<&BTreeSet<usize>> = sets
                    .iter()
                    .filter(|s| s.is_subset(mine) && s.len() < mine.len())
                    .collect();
                if below.len() == 1 {
                    // single proper sub-element which is connected
                    assert_eq!(r, 3 * (mine.len() as i64 - below[0].len() as i64));
                }
            }
        }
    }

    #[test]
    fn motive_class_examples() {
        let se = single_edge();
        let x = TatePolynomial::parse("1 + L + L^2").unwrap();
        let m = motive_class(&se, &x, 2).unwrap();
        let expect = &x.pow(4) + &(&x.pow(3) * &TatePolynomial::lefschetz(1));
        assert_eq!(m, expect);

        let x1 = TatePolynomial::parse("1 + L").unwrap();
        let m1 = motive_class(&se, &x1, 1).unwrap();
        assert_eq!(m1, x1.pow(4)); // codim-1 blowup adds nothing

        // class of a point: dim X = 0, every blowup weight vanishes
        let t = triangle();
        let point = TatePolynomial::one();
        assert_eq!(motive_class(&t, &point, 0).unwrap(), TatePolynomial::one());
    }

    #[test]
    fn motive_class_vs_direct_blowup() {
        let se = single_edge();
        for dim_x in 1..=4u32 {
            let x = {
                let mut p = TatePolynomial::zero();
                for k in 0..=dim_x {
                    p.set(k, 1);
                }
                p
            };
            let via_formula = motive_class(&se, &x, dim_x).unwrap();
            let direct = single_blowup_class(&se, &x, dim_x).unwrap();
            assert_eq!(via_formula, direct, "dimX = {dim_x}");
        }
    }

    #[test]
    fn motive_class_specialization_at_zero() {
        // at L = 0 only the mu-free term survives since every |mu| >= 1
        for g in [triangle(), banana3(), polygon(4)] {
            let x = TatePolynomial::parse("1 + 3*L + L^2").unwrap();
            let m = motive_class(&g, &x, 4).unwrap();
            let expect = x.coeff(0).pow(2 * g.vertex_count() as u32);
            assert_eq!(m.coeff(0), expect);
            assert!(m.leading_coeff() > 0);
        }
    }

    #[test]
    fn singularity_orders() {
        let b = banana3();
        let whole = InducedSubgraph::new(&b, &[0usize, 1].into_iter().collect()).unwrap();
        assert_eq!(singularity_order(&b, &whole, 4).unwrap(), 0);

        let se = single_edge();
        let whole = InducedSubgraph::new(&se, &[0usize, 1].into_iter().collect()).unwrap();
        assert_eq!(singularity_order(&se, &whole, 4).unwrap(), -4);

        let t = triangle();
        let whole = InducedSubgraph::new(&t, &[0usize, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(singularity_order(&t, &whole, 4).unwrap(), -8);

        let p = path3();
        let path_whole = InducedSubgraph::new(&p, &[0usize, 1, 2].into_iter().collect()).unwrap();
        assert!(singularity_order(&p, &path_whole, 4).is_err());
    }

    #[test]
    fn convergence_reports() {
        for g in [single_edge(), triangle(), banana3(), polygon(5)] {
            let r = convergence_report(&g, 4).unwrap();
            assert!(r.all_pass, "{r:?}");
            let r2 = convergence_report(&g, 2).unwrap();
            assert!(!r2.infinity_direction.1);
        }
        let t = triangle();
        let r = convergence_report(&t, 4).unwrap();
        for (_, lhs, ok) in &r.per_vertex {
            assert_eq!(*lhs, 9); // 6*2 - 3
            assert!(ok);
        }
    }
}
