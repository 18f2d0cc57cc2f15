//! Simply-laced root systems in the fundamental-weight basis.
//!
//! Nodes are 0-based in the API and 1-based in every textual form (`ω1`, `E6/P1`).
//! Dynkin diagrams follow Bourbaki: `E_n` is the chain `1-3-4-...-n` with node 2
//! attached to node 4, and `D_n` is the chain `1-...-(n-1)` with node `n`
//! attached to node `n-2`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidRootSystem {
                label: format!("{:?}", family),
                rank,
            })
        }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                e
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `E6`, `D5`, `A_3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => return Err(Error::parse(s, 0, "expected root system type A, D or E")),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::parse(s, t.len() - rest.len(), "expected a rank"))?;
        CartanType::new(family, rank)
    }
}

/// A positive root, in both weight coordinates and simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub weight: Weight,
    pub simple: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    /// `⟨x, α^∨⟩` for a weight `x` in fundamental coordinates.
    pub fn pair(&self, x: &Weight) -> BigInt {
        self.simple
            .iter()
            .zip(x.coeffs())
            .filter(|(c, _)| **c != 0)
            .map(|(c, a)| a * c)
            .sum()
    }

    /// True when the root lies in the span of `nodes`.
    pub fn supported_on(&self, nodes: &[usize]) -> bool {
        self.simple
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || nodes.contains(&i))
    }
}

/// Outcome of walking a weight into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberResult {
    Singular,
    Regular { length: usize, dominant: Weight },
}

/// One reflection of a walk: the node reflected at and the weight after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub node: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub result: ChamberResult,
    pub steps: Vec<WalkStep>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    neighbors: Vec<Vec<usize>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Root>,
    rho: Weight,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let n = cartan_type.rank;
        let mut cartan = vec![vec![0i64; n]; n];
        let mut neighbors = vec![Vec::new(); n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in cartan_type.edges() {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for adj in &mut neighbors {
            adj.sort_unstable();
        }
        let simple_roots: Vec<Weight> = cartan.iter().map(|row| Weight::from_ints(row)).collect();
        let positive_roots = close_positive_roots(&simple_roots);
        RootSystem {
            cartan_type,
            cartan,
            neighbors,
            simple_roots,
            positive_roots,
            rho: Weight::from_ints(&vec![1; n]),
        }
    }

    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::new(CartanType::new(family, rank)?))
    }

    pub fn e6() -> Self {
        Self::new(CartanType { family: Family::E, rank: 6 })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn all_nodes(&self) -> Vec<usize> {
        (0..self.rank()).collect()
    }

    pub fn fundamental(&self, node: usize) -> Weight {
        Weight::fundamental(self.rank(), node)
    }

    pub fn weight(&self, coeffs: &[i64]) -> Weight {
        assert_eq!(coeffs.len(), self.rank(), "wrong number of coefficients");
        Weight::from_ints(coeffs)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node < self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: node + 1, rank: self.rank() })
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                weight: w.clone(),
                expected: self.rank(),
                found: w.rank(),
            })
        }
    }

    /// `s_i(λ) = λ - λ_i α_i`: negates coefficient `i` and adds it to the neighbours.
    pub fn simple_reflection(&self, lambda: &Weight, node: usize) -> Result<Weight> {
        self.check_node(node)?;
        self.check_weight(lambda)?;
        let mut out = lambda.clone();
        self.reflect_in_place(&mut out, node);
        Ok(out)
    }

    pub(crate) fn reflect_in_place(&self, w: &mut Weight, node: usize) {
        let c = w[node].clone();
        if c.is_zero() {
            return;
        }
        *w.coeff_mut(node) = -&c;
        for &j in &self.neighbors[node] {
            *w.coeff_mut(j) += &c;
        }
    }

    fn step_budget(&self, lambda: &Weight) -> BigInt {
        BigInt::from(self.positive_roots.len()) + BigInt::from(self.rank()) * lambda.max_abs()
    }

    /// Walks `λ` into the dominant chamber of the full Weyl group, reflecting at the
    /// smallest negative node each time.
    pub fn to_dominant(&self, lambda: &Weight) -> Result<ChamberResult> {
        Ok(self.walk(lambda, &self.all_nodes(), |neg| neg[0])?.result)
    }

    /// As [`to_dominant`](Self::to_dominant), recording every intermediate weight.
    pub fn to_dominant_traced(&self, lambda: &Weight) -> Result<Walk> {
        self.walk(lambda, &self.all_nodes(), |neg| neg[0])
    }

    /// General walk restricted to the reflections at `nodes`.
    ///
    /// Stops `Singular` as soon as a coefficient at one of `nodes` is zero and
    /// `Regular` once they are all positive; otherwise `choose` picks the next
    /// reflection among the (ascending) negative nodes.
    pub fn walk(
        &self,
        lambda: &Weight,
        nodes: &[usize],
        mut choose: impl FnMut(&[usize]) -> usize,
    ) -> Result<Walk> {
        self.check_weight(lambda)?;
        for &n in nodes {
            self.check_node(n)?;
        }
        let budget = self.step_budget(lambda);
        let mut current = lambda.clone();
        let mut steps = Vec::new();
        let mut negative = Vec::with_capacity(nodes.len());
        loop {
            negative.clear();
            for &n in nodes {
                let c = &current[n];
                if c.is_zero() {
                    return Ok(Walk { result: ChamberResult::Singular, steps });
                }
                if c.is_negative() {
                    negative.push(n);
                }
            }
            if negative.is_empty() {
                let length = steps.len();
                return Ok(Walk {
                    result: ChamberResult::Regular { length, dominant: current },
                    steps,
                });
            }
            if BigInt::from(steps.len()) >= budget {
                return Err(Error::Internal(format!(
                    "reflection walk from {lambda} exceeded its step budget {budget}"
                )));
            }
            let node = choose(&negative);
            debug_assert!(negative.contains(&node));
            self.reflect_in_place(&mut current, node);
            steps.push(WalkStep { node, weight: current.clone() });
        }
    }

    /// `−w0(λ)`: the highest weight of the dual of `V_λ` for dominant `λ`.
    pub fn dual_dominant(&self, lambda: &Weight) -> Result<Weight> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant { weight: lambda.clone() });
        }
        Ok(-self.to_antidominant(lambda, &self.all_nodes()))
    }

    /// Reflects at positive coefficients among `nodes` until none is left.
    pub(crate) fn to_antidominant(&self, lambda: &Weight, nodes: &[usize]) -> Weight {
        let mut w = lambda.clone();
        while let Some(&n) = nodes.iter().find(|&&n| w[n].is_positive()) {
            self.reflect_in_place(&mut w, n);
        }
        w
    }

    /// Weyl dimension formula `∏ ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩` over the positive roots.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant { weight: lambda.clone() });
        }
        dimension_over(self.positive_roots.iter(), lambda)
    }

    /// The orbit `W·λ`, by breadth-first closure under simple reflections.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_weight(lambda)?;
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for node in 0..self.rank() {
                if w[node].is_zero() {
                    continue;
                }
                let mut next = w.clone();
                self.reflect_in_place(&mut next, node);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Expresses `Σ c_i α_i` in weight coordinates.
    pub fn root_combination(&self, simple: &[i64]) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (i, &c) in simple.iter().enumerate() {
            if c != 0 {
                w += &(c * &self.simple_roots[i]);
            }
        }
        w
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("root system has positive roots")
    }
}

/// `∏ ⟨λ+ρ', α^∨⟩ / ⟨ρ', α^∨⟩` over `roots`, where `ρ'` is any weight pairing to 1
/// with every simple root of the subsystem (so `⟨ρ', α^∨⟩` is the height of `α`).
pub(crate) fn dimension_over<'a>(
    roots: impl Iterator<Item = &'a Root>,
    lambda: &Weight,
) -> Result<BigInt> {
    let mut acc = BigRational::one();
    for root in roots {
        let num = root.pair(lambda) + BigInt::from(root.height());
        acc *= BigRational::new(num, BigInt::from(root.height()));
    }
    if !acc.is_integer() || !acc.is_positive() {
        return Err(Error::Internal(format!(
            "Weyl dimension of {lambda} came out as {acc}"
        )));
    }
    Ok(acc.to_integer())
}

fn close_positive_roots(simple_roots: &[Weight]) -> Vec<Root> {
    let n = simple_roots.len();
    let mut roots: Vec<Root> = (0..n)
        .map(|i| {
            let mut simple = vec![0; n];
            simple[i] = 1;
            Root { weight: simple_roots[i].clone(), simple }
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().map(|r| r.simple.clone()).collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let root = roots[cursor].clone();
        cursor += 1;
        for i in 0..n {
            if root.weight[i].is_negative() {
                let mut simple = root.simple.clone();
                simple[i] += 1;
                if seen.insert(simple.clone()) {
                    roots.push(Root { weight: &root.weight + &simple_roots[i], simple });
                }
            }
        }
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.simple.cmp(&a.simple)));
    roots
}

/// Number of positive roots by the closed formula for the type.
pub fn expected_positive_root_count(t: CartanType) -> usize {
    let n = t.rank;
    match (t.family, n) {
        (Family::A, _) => n * (n + 1) / 2,
        (Family::D, _) => n * (n - 1),
        (Family::E, 6) => 36,
        (Family::E, 7) => 63,
        (Family::E, _) => 120,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<CartanType> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(CartanType::new(Family::A, n).unwrap());
        }
        for n in 4..=8 {
            v.push(CartanType::new(Family::D, n).unwrap());
        }
        for n in 6..=8 {
            v.push(CartanType::new(Family::E, n).unwrap());
        }
        v
    }

    #[test]
    fn root_counts_match_closed_formulas() {
        for t in all_types() {
            let r = RootSystem::new(t);
            assert_eq!(r.positive_roots().len(), expected_positive_root_count(t), "{t}");
        }
    }

    #[test]
    fn cartan_invariants() {
        for t in all_types() {
            let r = RootSystem::new(t);
            let c = r.cartan_matrix();
            for i in 0..r.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..r.rank() {
                    assert_eq!(c[i][j], c[j][i]);
                    if i != j {
                        assert!(c[i][j] == 0 || c[i][j] == -1);
                    }
                }
                // ⟨ρ, α_i^∨⟩ = 1
                assert_eq!(r.rho()[i], BigInt::from(1));
            }
            for root in r.positive_roots() {
                assert!(root.simple.iter().all(|&c| c >= 0));
                assert_eq!(r.root_combination(&root.simple), root.weight);
            }
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(RootSystem::build(Family::D, 3).is_err());
        assert!(RootSystem::build(Family::E, 5).is_err());
        assert!(RootSystem::build(Family::A, 0).is_err());
        let err = "E9".parse::<CartanType>().unwrap_err();
        assert!(err.to_string().contains("E9"));
    }

    #[test]
    fn a1_data() {
        let r = RootSystem::build(Family::A, 1).unwrap();
        assert_eq!(r.cartan_matrix(), &[vec![2]]);
        assert_eq!(r.rho(), &Weight::from_ints(&[1]));
    }

    #[test]
    fn e6_bourbaki_layout() {
        let r = RootSystem::e6();
        assert_eq!(r.simple_roots()[0], Weight::from_ints(&[2, 0, -1, 0, 0, 0]));
        assert_eq!(r.neighbors(3), &[1, 2, 4]);
        // the highest root is ω2
        assert_eq!(r.highest_root().weight, r.fundamental(1));
        assert_eq!(r.highest_root().simple, vec![1, 2, 2, 3, 2, 1]);
    }

    #[test]
    fn reflection_examples() {
        let r = RootSystem::e6();
        let w = r.simple_reflection(&r.weight(&[1, 0, 0, 0, 0, 0]), 0).unwrap();
        assert_eq!(w, r.weight(&[-1, 0, 1, 0, 0, 0]));
        let fixed = r.weight(&[3, 0, -2, 1, 0, 0]);
        assert_eq!(r.simple_reflection(&fixed, 1).unwrap(), fixed);
        assert!(matches!(
            r.simple_reflection(&fixed, 6),
            Err(Error::NodeOutOfRange { node: 7, rank: 6 })
        ));
    }

    #[test]
    fn walk_of_rho_is_trivial() {
        let r = RootSystem::e6();
        assert_eq!(
            r.to_dominant(r.rho()).unwrap(),
            ChamberResult::Regular { length: 0, dominant: r.rho().clone() }
        );
    }

    #[test]
    fn walk_length_bounded_by_root_count() {
        let r = RootSystem::e6();
        // −ρ is the image of ρ under the longest element
        match r.to_dominant(&-r.rho()).unwrap() {
            ChamberResult::Regular { length, dominant } => {
                assert_eq!(length, 36);
                assert_eq!(&dominant, r.rho());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimensions() {
        let r = RootSystem::e6();
        assert_eq!(r.weyl_dimension(&Weight::zero(6)).unwrap(), BigInt::from(1));
        assert_eq!(r.weyl_dimension(&r.fundamental(0)).unwrap(), BigInt::from(27));
        assert_eq!(r.weyl_dimension(&r.fundamental(5)).unwrap(), BigInt::from(27));
        assert_eq!(r.weyl_dimension(&r.fundamental(1)).unwrap(), BigInt::from(78));
        assert!(matches!(
            r.weyl_dimension(&r.weight(&[1, 0, 0, 0, 0, -1])),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn orbits() {
        let e6 = RootSystem::e6();
        assert_eq!(e6.weyl_orbit(&e6.fundamental(0)).unwrap().len(), 27);
        assert_eq!(e6.weyl_orbit(&Weight::zero(6)).unwrap().len(), 1);
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let orbit = a2.weyl_orbit(&a2.fundamental(0)).unwrap();
        let expected: BTreeSet<_> = [[1, 0], [-1, 1], [0, -1]]
            .iter()
            .map(|c| Weight::from_ints(c))
            .collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn e6_duality_swaps_1_and_6() {
        let r = RootSystem::e6();
        assert_eq!(r.dual_dominant(&r.fundamental(0)).unwrap(), r.fundamental(5));
        assert_eq!(r.dual_dominant(&r.fundamental(1)).unwrap(), r.fundamental(1));
        assert_eq!(r.dual_dominant(&r.fundamental(2)).unwrap(), r.fundamental(4));
    }
}
