//! Characters of Levi modules, carried in ambient weight coordinates.
//!
//! Every weight keeps its crossed-node coefficients, so the twist of each summand
//! of a tensor product falls out of the arithmetic. `ρ_L` is taken as the sum of the
//! Levi fundamental weights; it differs from the half-sum of Levi positive roots by
//! a central weight, which changes none of the formulas below.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::root_system::ChamberResult;
use crate::weight::Weight;

/// A formal character: weight ↦ (possibly negative, while being manipulated) multiplicity.
pub type Character = BTreeMap<Weight, BigInt>;

/// All weights of an irreducible Levi module, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: Weight,
    pub entries: BTreeMap<Weight, BigInt>,
}

impl WeightSystem {
    pub fn dimension(&self) -> BigInt {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    fn shifted(&self, by: &Weight) -> WeightSystem {
        WeightSystem {
            highest: &self.highest + by,
            entries: self.entries.iter().map(|(w, m)| (w + by, m.clone())).collect(),
        }
    }
}

/// A direct sum of irreducible Levi modules (equivalently, of irreducible
/// homogeneous bundles), keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    summands: BTreeMap<Weight, BigInt>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut d = Self::new();
        d.add(w, BigInt::one());
        d
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut d = Self::new();
        for (w, m) in pairs {
            d.add(w, BigInt::from(m));
        }
        d
    }

    pub fn add(&mut self, w: Weight, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let entry = self.summands.entry(w.clone()).or_default();
        *entry += m;
        if entry.is_zero() {
            self.summands.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.summands.iter()
    }

    /// Number of distinct summands.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn total_multiplicity(&self) -> BigInt {
        self.summands.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.summands.get(w).cloned().unwrap_or_default()
    }

    /// Rank of the corresponding bundle.
    pub fn dimension(&self, p: &ParabolicData) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (w, m) in &self.summands {
            total += m * p.levi_dimension(w)?;
        }
        Ok(total)
    }

    /// Every summand shifted by the same weight (e.g. a line-bundle twist).
    pub fn shifted(&self, by: &Weight) -> Decomposition {
        Decomposition {
            summands: self.summands.iter().map(|(w, m)| (w + by, m.clone())).collect(),
        }
    }

    pub fn merge(&mut self, other: &Decomposition) {
        for (w, m) in &other.summands {
            self.add(w.clone(), m.clone());
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(w, m)| {
                if m.is_one() {
                    format!("V({w})")
                } else {
                    format!("{m}·V({w})")
                }
            })
            .collect();
        f.write_str(&parts.join(" \u{2295} "))
    }
}

/// Weight system of the irreducible Levi module `V_L(λ)` by Freudenthal's recursion
/// over the Levi positive roots.
pub fn weight_system(p: &ParabolicData, lambda: &Weight) -> Result<Arc<WeightSystem>> {
    p.check_levi_dominant(lambda)?;
    let base = p.levi_part(lambda);
    let shift = lambda - &base;
    let cached = p.weight_cache.read().expect("cache lock").get(&base).cloned();
    let ws = match cached {
        Some(ws) => ws,
        None => {
            let ws = Arc::new(freudenthal(p, &base)?);
            p.weight_cache
                .write()
                .expect("cache lock")
                .entry(base)
                .or_insert(ws)
                .clone()
        }
    };
    Ok(if shift.is_zero() { ws } else { Arc::new(ws.shifted(&shift)) })
}

fn freudenthal(p: &ParabolicData, lambda: &Weight) -> Result<WeightSystem> {
    let r = p.root_system();
    let levi = p.levi_nodes();
    // Levi roots as (weight, coefficients on the Levi simple roots).
    let roots: Vec<(Weight, Vec<i64>)> = p
        .levi_roots()
        .iter()
        .map(|root| (root.weight.clone(), levi.iter().map(|&n| root.simple[n]).collect()))
        .collect();

    // weight ↦ (multiplicity, depth), depth = Levi root coordinates of λ − μ.
    let mut known: HashMap<Weight, (BigInt, Vec<i64>)> = HashMap::new();
    known.insert(lambda.clone(), (BigInt::one(), vec![0; levi.len()]));
    let mut level: Vec<Weight> = vec![lambda.clone()];
    let two = BigInt::from(2);

    while !level.is_empty() {
        let mut candidates: BTreeMap<Weight, Vec<i64>> = BTreeMap::new();
        for mu in &level {
            let depth = &known[mu].1;
            for (j, &n) in levi.iter().enumerate() {
                let nu = mu - &r.simple_roots()[n];
                if known.contains_key(&nu) || candidates.contains_key(&nu) {
                    continue;
                }
                let mut d = depth.clone();
                d[j] += 1;
                candidates.insert(nu, d);
            }
        }
        let mut next = Vec::new();
        for (nu, depth) in candidates {
            // (λ+ρ, λ+ρ) − (ν+ρ, ν+ρ) = (λ−ν, λ+ν+2ρ)
            let sum = lambda + &nu;
            let denom: BigInt = depth
                .iter()
                .zip(levi)
                .filter(|(k, _)| **k != 0)
                .map(|(&k, &n)| BigInt::from(k) * (&sum[n] + &two))
                .sum();
            let mut numer = BigInt::zero();
            for (root_w, root_c) in &roots {
                let mut shifted = nu.clone();
                let mut sd = depth.clone();
                loop {
                    shifted += root_w;
                    let mut inside = true;
                    for (x, c) in sd.iter_mut().zip(root_c) {
                        *x -= c;
                        inside &= *x >= 0;
                    }
                    if !inside {
                        break;
                    }
                    if let Some((m, _)) = known.get(&shifted) {
                        let pairing: BigInt = root_c
                            .iter()
                            .zip(levi)
                            .filter(|(c, _)| **c != 0)
                            .map(|(&c, &n)| BigInt::from(c) * &shifted[n])
                            .sum();
                        numer += m * pairing;
                    }
                }
            }
            numer *= &two;
            let mult = if numer.is_zero() {
                BigInt::zero()
            } else if denom.is_positive() && (&numer % &denom).is_zero() {
                &numer / &denom
            } else {
                return Err(Error::Internal(format!(
                    "Freudenthal recursion for {lambda} at {nu}: {numer}/{denom}"
                )));
            };
            if mult.is_negative() {
                return Err(Error::Internal(format!("negative multiplicity at {nu}")));
            }
            if !mult.is_zero() {
                known.insert(nu.clone(), (mult, depth));
                next.push(nu);
            }
        }
        level = next;
    }

    Ok(WeightSystem {
        highest: lambda.clone(),
        entries: known.into_iter().map(|(w, (m, _))| (w, m)).collect(),
    })
}

/// `V_L(λ) ⊗ V_L(μ)` by Klimyk's formula: each weight `ν` of `V_L(μ)` contributes
/// `±mult(ν)` at the Levi-dominant representative of `λ + ν + ρ_L`, shifted back by `ρ_L`.
pub fn klimyk_tensor(p: &ParabolicData, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    p.check_levi_dominant(lambda)?;
    let ws = weight_system(p, mu)?;
    let rho_l = p.rho_levi();
    let shifted_lambda = lambda + rho_l;
    let mut acc: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for (nu, m) in &ws.entries {
        let start = &shifted_lambda + nu;
        let walk = p.root_system().walk(&start, p.levi_nodes(), |neg| neg[0])?;
        if let ChamberResult::Regular { length, dominant } = walk.result {
            let entry = acc.entry(&dominant - rho_l).or_default();
            if length % 2 == 0 {
                *entry += m;
            } else {
                *entry -= m;
            }
        }
    }
    let mut out = Decomposition::new();
    for (w, m) in acc {
        if m.is_negative() {
            return Err(Error::Internal(format!(
                "Klimyk multiplicity of {w} in {lambda} ⊗ {mu} is negative ({m})"
            )));
        }
        out.add(w, m);
    }
    Ok(out)
}

/// The formal character of `V_L(λ)`.
pub fn character(p: &ParabolicData, lambda: &Weight) -> Result<Character> {
    Ok(weight_system(p, lambda)?.entries.clone())
}

pub fn character_product(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry(wa + wb).or_default() += ma * mb;
        }
    }
    out.retain(|_, m| !m.is_zero());
    out
}

/// Adams operation `ψ^k`: every weight scaled by `k`.
pub fn adams(a: &Character, k: i64) -> Character {
    a.iter().map(|(w, m)| (k * w, m.clone())).collect()
}

fn combine(terms: &[(i64, &Character)], divisor: i64) -> Result<Character> {
    let mut out = Character::new();
    for (coef, ch) in terms {
        for (w, m) in *ch {
            *out.entry(w.clone()).or_default() += BigInt::from(*coef) * m;
        }
    }
    let d = BigInt::from(divisor);
    let mut result = Character::new();
    for (w, m) in out {
        if m.is_zero() {
            continue;
        }
        if !(&m % &d).is_zero() {
            return Err(Error::Internal(format!("character coefficient {m} at {w} not divisible by {d}")));
        }
        result.insert(w, m / &d);
    }
    Ok(result)
}

/// Splits a genuine character into irreducible Levi characters by repeatedly
/// removing the character of a highest remaining weight.
pub fn decompose_character(p: &ParabolicData, ch: &Character) -> Result<Decomposition> {
    let mut remaining: Character = ch.iter().filter(|(_, m)| !m.is_zero()).map(|(w, m)| (w.clone(), m.clone())).collect();
    let mut out = Decomposition::new();
    while !remaining.is_empty() {
        let (top, mult) = remaining
            .iter()
            .max_by(|(a, _), (b, _)| p.levi_height(a).cmp(&p.levi_height(b)).then_with(|| b.cmp(a)))
            .map(|(w, m)| (w.clone(), m.clone()))
            .expect("nonempty");
        if mult.is_negative() || !p.is_levi_dominant(&top) {
            return Err(Error::Internal(format!(
                "character peel reached {top} with multiplicity {mult}"
            )));
        }
        let ws = weight_system(p, &top)?;
        for (w, m) in &ws.entries {
            let entry = remaining.entry(w.clone()).or_default();
            *entry -= &mult * m;
            if entry.is_zero() {
                remaining.remove(w);
            }
        }
        out.add(top, mult);
    }
    Ok(out)
}

/// `Sym^k V_L(λ)` for `k ∈ {2, 3}`.
pub fn sym_power(p: &ParabolicData, lambda: &Weight, k: u32) -> Result<Decomposition> {
    let ch = character(p, lambda)?;
    let sym = match k {
        2 => {
            let sq = character_product(&ch, &ch);
            combine(&[(1, &sq), (1, &adams(&ch, 2))], 2)?
        }
        3 => {
            let sq = character_product(&ch, &ch);
            let cube = character_product(&sq, &ch);
            let mixed = character_product(&ch, &adams(&ch, 2));
            combine(&[(1, &cube), (3, &mixed), (2, &adams(&ch, 3))], 6)?
        }
        _ => return Err(Error::UnsupportedPower(k)),
    };
    decompose_character(p, &sym)
}

/// `∧^k V_L(λ)`; only `k = 2` is supported.
pub fn ext_power(p: &ParabolicData, lambda: &Weight, k: u32) -> Result<Decomposition> {
    if k != 2 {
        return Err(Error::UnsupportedPower(k));
    }
    let ch = character(p, lambda)?;
    let sq = character_product(&ch, &ch);
    let alt = combine(&[(1, &sq), (-1, &adams(&ch, 2))], 2)?;
    decompose_character(p, &alt)
}
