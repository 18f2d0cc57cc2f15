//! Parabolic subgroups: Levi dominance, line-bundle twists, Levi duality and the
//! canonical bundle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rep_theory::WeightSystem;
use crate::root_system::{dimension_over, CartanType, Root, RootSystem};
use crate::weight::Weight;

/// A root system with a set of crossed nodes, i.e. the homogeneous space `G/P`.
#[derive(Clone)]
pub struct ParabolicData {
    root_system: Arc<RootSystem>,
    crossed: Vec<usize>,
    levi_nodes: Vec<usize>,
    levi_roots: Vec<Root>,
    nilradical_roots: Vec<Root>,
    rho_levi: Weight,
    /// Inverse of the Levi block of the Cartan matrix.
    levi_cartan_inverse: Vec<Vec<BigRational>>,
    /// Integer functional, positive on every Levi simple root.
    levi_height: Vec<BigInt>,
    pub(crate) weight_cache: Arc<RwLock<HashMap<Weight, Arc<WeightSystem>>>>,
}

impl fmt::Debug for ParabolicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParabolicData({self})")
    }
}

impl fmt::Display for ParabolicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.crossed.iter().map(|n| (n + 1).to_string()).collect();
        write!(f, "{}/P{}", self.root_system.cartan_type(), nodes.join(","))
    }
}

impl FromStr for ParabolicData {
    type Err = Error;

    /// Parses labels such as `E6/P1` or `A3/P2`.
    fn from_str(s: &str) -> Result<Self> {
        let (ty, nodes) = s
            .split_once('/')
            .ok_or_else(|| Error::parse(s, 0, "expected <TYPE><rank>/P<node>, e.g. E6/P1"))?;
        let offset = ty.len() + 1;
        let nodes = nodes
            .trim()
            .strip_prefix('P')
            .ok_or_else(|| Error::parse(s, offset, "expected P<node> after '/'"))?;
        let cartan_type: CartanType = ty.parse()?;
        let mut crossed = Vec::new();
        for part in nodes.split(',') {
            let node: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(s, offset + 1, format!("bad node index {part:?}")))?;
            if node == 0 {
                return Err(Error::NodeOutOfRange { node, rank: cartan_type.rank });
            }
            crossed.push(node - 1);
        }
        ParabolicData::new(Arc::new(RootSystem::new(cartan_type)), crossed)
    }
}

impl ParabolicData {
    /// `crossed` holds 0-based node indices.
    pub fn new(root_system: Arc<RootSystem>, mut crossed: Vec<usize>) -> Result<Self> {
        crossed.sort_unstable();
        crossed.dedup();
        if crossed.is_empty() {
            return Err(Error::UnsupportedParabolic("no crossed node".into()));
        }
        for &n in &crossed {
            root_system.check_node(n)?;
        }
        let rank = root_system.rank();
        let levi_nodes: Vec<usize> = (0..rank).filter(|n| !crossed.contains(n)).collect();
        let (levi_roots, nilradical_roots): (Vec<Root>, Vec<Root>) = root_system
            .positive_roots()
            .iter()
            .cloned()
            .partition(|r| r.supported_on(&levi_nodes));
        let mut rho_levi = Weight::zero(rank);
        for &n in &levi_nodes {
            *rho_levi.coeff_mut(n) = BigInt::one();
        }
        let block: Vec<Vec<i64>> = levi_nodes
            .iter()
            .map(|&i| levi_nodes.iter().map(|&j| root_system.cartan_matrix()[i][j]).collect())
            .collect();
        let levi_cartan_inverse = linalg::invert(&block)
            .ok_or_else(|| Error::Internal("singular Levi Cartan block".into()))?;
        let levi_height = integer_height(&levi_cartan_inverse, &levi_nodes, rank);
        Ok(ParabolicData {
            root_system,
            crossed,
            levi_nodes,
            levi_roots,
            nilradical_roots,
            rho_levi,
            levi_cartan_inverse,
            levi_height,
            weight_cache: Arc::default(),
        })
    }

    /// `G/P_node` for a maximal parabolic (0-based node).
    pub fn maximal(root_system: Arc<RootSystem>, node: usize) -> Result<Self> {
        Self::new(root_system, vec![node])
    }

    /// The Cayley plane `E6/P1`.
    pub fn cayley_plane() -> Self {
        Self::maximal(Arc::new(RootSystem::e6()), 0).expect("E6/P1 is valid")
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn crossed(&self) -> &[usize] {
        &self.crossed
    }

    pub fn levi_nodes(&self) -> &[usize] {
        &self.levi_nodes
    }

    pub fn levi_roots(&self) -> &[Root] {
        &self.levi_roots
    }

    pub fn nilradical_roots(&self) -> &[Root] {
        &self.nilradical_roots
    }

    /// `dim G/P`.
    pub fn dimension(&self) -> usize {
        self.nilradical_roots.len()
    }

    pub fn rho_levi(&self) -> &Weight {
        &self.rho_levi
    }

    /// The crossed node of a maximal parabolic.
    pub fn crossed_node(&self) -> Result<usize> {
        match self.crossed.as_slice() {
            [c] => Ok(*c),
            _ => Err(Error::UnsupportedParabolic(format!(
                "{self} has {} crossed nodes, a single one is required",
                self.crossed.len()
            ))),
        }
    }

    pub fn is_levi_dominant(&self, lambda: &Weight) -> bool {
        self.levi_nodes.iter().all(|&n| !lambda[n].is_negative())
    }

    pub fn check_levi_dominant(&self, lambda: &Weight) -> Result<()> {
        self.root_system.check_weight(lambda)?;
        match self.levi_nodes.iter().find(|&&n| lambda[n].is_negative()) {
            None => Ok(()),
            Some(&n) => Err(Error::NotLeviDominant { weight: lambda.clone(), node: n + 1 }),
        }
    }

    /// `λ + k ω_c` for the crossed node `c`.
    pub fn twist(&self, lambda: &Weight, k: i64) -> Result<Weight> {
        self.twist_big(lambda, &BigInt::from(k))
    }

    pub fn twist_big(&self, lambda: &Weight, k: &BigInt) -> Result<Weight> {
        let c = self.crossed_node()?;
        self.root_system.check_weight(lambda)?;
        let mut out = lambda.clone();
        *out.coeff_mut(c) += k;
        Ok(out)
    }

    /// Coefficient on the crossed node of a maximal parabolic.
    pub fn twist_of(&self, lambda: &Weight) -> Result<BigInt> {
        Ok(lambda[self.crossed_node()?].clone())
    }

    /// `λ` with its crossed coefficients set to zero.
    pub fn levi_part(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.clone();
        for &c in &self.crossed {
            *out.coeff_mut(c) = BigInt::zero();
        }
        out
    }

    /// `−w0^L(λ)` in the ambient weight lattice: reflect at Levi nodes until the Levi
    /// part is antidominant, then negate.
    pub fn dual_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.check_levi_dominant(lambda)?;
        Ok(-self.root_system.to_antidominant(lambda, &self.levi_nodes))
    }

    /// `−Σ` of the nilradical roots, the weight of `K_{G/P}`.
    pub fn canonical_weight(&self) -> Weight {
        let mut sum = Weight::zero(self.rank());
        for r in &self.nilradical_roots {
            sum += &r.weight;
        }
        -sum
    }

    /// Fano index: coefficient of `−K` on the crossed node.
    pub fn index(&self) -> Result<BigInt> {
        let c = self.crossed_node()?;
        Ok(-&self.canonical_weight()[c])
    }

    /// Dimension of the irreducible Levi module with highest weight `λ`.
    pub fn levi_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.check_levi_dominant(lambda)?;
        dimension_over(self.levi_roots.iter(), lambda)
    }

    /// Coordinates `k` with `diff = Σ_{j ∈ Levi} k_j α_j`, or `None` if `diff` is not in
    /// the Levi root lattice.
    pub fn levi_root_coordinates(&self, diff: &Weight) -> Option<Vec<BigInt>> {
        if diff.rank() != self.rank() {
            return None;
        }
        let mut coords = Vec::with_capacity(self.levi_nodes.len());
        for row in &self.levi_cartan_inverse {
            let x: BigRational = row
                .iter()
                .zip(&self.levi_nodes)
                .map(|(a, &n)| a * BigRational::from_integer(diff[n].clone()))
                .sum();
            if !x.is_integer() {
                return None;
            }
            coords.push(x.to_integer());
        }
        let mut rebuilt = Weight::zero(self.rank());
        for (k, &n) in coords.iter().zip(&self.levi_nodes) {
            rebuilt += &(k * &self.root_system.simple_roots()[n]);
        }
        (rebuilt == *diff).then_some(coords)
    }

    pub fn in_levi_root_lattice(&self, diff: &Weight) -> bool {
        self.levi_root_coordinates(diff).is_some()
    }

    /// A linear functional strictly increasing along every positive Levi root.
    pub fn levi_height(&self, lambda: &Weight) -> BigInt {
        self.levi_height
            .iter()
            .zip(lambda.coeffs())
            .map(|(h, c)| h * c)
            .sum()
    }
}

fn integer_height(inverse: &[Vec<BigRational>], levi_nodes: &[usize], rank: usize) -> Vec<BigInt> {
    // u = C_L^{-1} 1 pairs to the height of every Levi root; clear denominators.
    let u: Vec<BigRational> = inverse.iter().map(|row| row.iter().sum()).collect();
    let denom = u.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out = vec![BigInt::zero(); rank];
    for (x, &n) in u.iter().zip(levi_nodes) {
        out[n] = (x * BigRational::from_integer(denom.clone())).to_integer();
    }
    out
}
