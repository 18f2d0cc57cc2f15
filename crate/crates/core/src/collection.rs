//! Hom bundles, exceptional objects and ordered (strongly) exceptional collections
//! of irreducible homogeneous bundles.
//!
//! Bundle names:
//!
//! ```text
//! NAME   ::= BASE [ "(" INT ")" ]
//! BASE   ::= "O" | "S" | "S2" | "S3" | "T" | "Om"      (E6/P1 only, except "O")
//!          | "E[" INT ("," INT)* "]"                   raw weight
//!          | "E_{" TERM (("+"|"-") TERM)* "}"          e.g. E_{ω3+2ω5}, E_{w5}
//! ```
//!
//! A bare comma-separated weight (`-3,0,0,0,0,6`) is accepted as well. The optional
//! `(k)` twists by `O(k)`; `−` (U+2212) and `-` are both minus signs.

use std::cmp::Reverse;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bott::{cohomology_of_decomposition, GradedCohomology};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::rep_theory::{klimyk_tensor, Decomposition};
use crate::root_system::Family;
use crate::weight::{parse_int, Weight};

const CAYLEY_PLANE_COLLECTION: &str = include_str!("../data/cayley_plane_27.txt");

/// An irreducible homogeneous bundle `E_weight` with a display name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleRef {
    pub name: String,
    pub weight: Weight,
}

impl fmt::Display for BundleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl BundleRef {
    /// Parses a bundle name on `p`; the stored name is the canonical rendering.
    pub fn parse(p: &ParabolicData, input: &str) -> Result<Self> {
        let weight = parse_bundle(p, input)?;
        p.check_levi_dominant(&weight)?;
        Ok(BundleRef { name: bundle_name(p, &weight), weight })
    }

    pub fn from_weight(p: &ParabolicData, weight: Weight) -> Result<Self> {
        p.check_levi_dominant(&weight)?;
        Ok(BundleRef { name: bundle_name(p, &weight), weight })
    }
}

fn is_cayley_plane(p: &ParabolicData) -> bool {
    let t = p.root_system().cartan_type();
    t.family == Family::E && t.rank == 6 && p.crossed() == [0]
}

/// Levi parts of the named bundles on E6/P1.
fn named_bases(p: &ParabolicData) -> Vec<(&'static str, Weight)> {
    let r = p.root_system();
    let mut v = vec![("O", Weight::zero(r.rank()))];
    if is_cayley_plane(p) {
        v.push(("S", r.weight(&[0, 0, 0, 0, 0, 1])));
        v.push(("S2", r.weight(&[0, 0, 0, 0, 0, 2])));
        v.push(("S3", r.weight(&[0, 0, 0, 0, 0, 3])));
        v.push(("T", r.weight(&[0, 1, 0, 0, 0, 0])));
    }
    v
}

fn om_weight(p: &ParabolicData) -> Option<Weight> {
    is_cayley_plane(p).then(|| p.root_system().weight(&[-2, 0, 1, 0, 0, 0]))
}

fn twist_suffix(k: &BigInt) -> String {
    if k.is_zero() {
        String::new()
    } else if k.is_negative() {
        format!("(\u{2212}{})", -k)
    } else {
        format!("({k})")
    }
}

/// `ω3+2ω5` style, no spaces.
pub fn compact_weight(w: &Weight) -> String {
    let mut out = String::new();
    for (node, c) in w.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('\u{2212}');
        } else if !out.is_empty() {
            out.push('+');
        }
        let m = c.abs();
        if !m.is_one() {
            out.push_str(&m.to_string());
        }
        out.push_str(&format!("\u{3c9}{}", node + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical name: `S2(−1)`, `O(3)`, `E_{ω3+2ω5}(−3)`; `E[..]` when the parabolic is
/// not maximal.
pub fn bundle_name(p: &ParabolicData, w: &Weight) -> String {
    let Ok(c) = p.crossed_node() else {
        return format!("E[{}]", w.to_csv());
    };
    let k = w[c].clone();
    let levi = p.levi_part(w);
    for (name, base) in named_bases(p) {
        if base == levi {
            return format!("{name}{}", twist_suffix(&k));
        }
    }
    format!("E_{{{}}}{}", compact_weight(&levi), twist_suffix(&k))
}

/// Renders a decomposition as `E_{4ω6}(−2) ⊕ … ⊕ O`, ordered by twist, then by
/// decreasing Levi height.
pub fn render_decomposition(p: &ParabolicData, dec: &Decomposition) -> String {
    if dec.is_empty() {
        return "0".to_string();
    }
    let mut items: Vec<(&Weight, &BigInt)> = dec.iter().collect();
    let twist = |w: &Weight| p.crossed_node().map(|c| w[c].clone()).unwrap_or_default();
    items.sort_by_key(|(w, _)| (twist(w), Reverse(p.levi_height(&p.levi_part(w))), (*w).clone()));
    items
        .into_iter()
        .map(|(w, m)| {
            let name = bundle_name(p, w);
            if m.is_one() {
                name
            } else {
                format!("{m}\u{b7}{name}")
            }
        })
        .collect::<Vec<_>>()
        .join(" \u{2295} ")
}

fn parse_bundle(p: &ParabolicData, input: &str) -> Result<Weight> {
    let s = input.trim();
    let lead = input.len() - input.trim_start().len();
    if s.is_empty() {
        return Err(Error::parse(input, 0, "empty bundle name"));
    }
    if s.contains(',') && !s.starts_with('E') {
        let w = Weight::parse_csv(s)?;
        p.root_system().check_weight(&w)?;
        return Ok(w);
    }
    // split off a trailing "(k)"
    let (base, twist) = match s.strip_suffix(')') {
        Some(body) => {
            let open = body
                .rfind('(')
                .ok_or_else(|| Error::parse(input, lead + s.len() - 1, "unmatched ')'"))?;
            let k = parse_int(input, lead + open + 1, body[open + 1..].trim())?;
            (&s[..open], k)
        }
        None => (s, BigInt::zero()),
    };
    let base_weight = parse_base(p, input, lead, base.trim_end())?;
    if twist.is_zero() {
        Ok(base_weight)
    } else {
        p.twist_big(&base_weight, &twist)
    }
}

fn parse_base(p: &ParabolicData, input: &str, offset: usize, base: &str) -> Result<Weight> {
    let rank = p.rank();
    if let Some(inner) = base.strip_prefix("E[") {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(input, offset + base.len(), "expected ']'"))?;
        let w = Weight::parse_csv(inner).map_err(|e| match e {
            Error::Parse { position, message, .. } => Error::parse(input, offset + 2 + position, message),
            other => other,
        })?;
        p.root_system().check_weight(&w)?;
        return Ok(w);
    }
    if let Some(inner) = base.strip_prefix("E_{") {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| Error::parse(input, offset + base.len(), "expected '}'"))?;
        return parse_omega_sum(input, offset + 3, inner, rank);
    }
    if base == "Om" {
        return om_weight(p).ok_or_else(|| Error::parse(input, offset, "Om is only defined on E6/P1"));
    }
    for (name, w) in named_bases(p) {
        if base == name {
            return Ok(w);
        }
    }
    if ["S", "S2", "S3", "T"].contains(&base) {
        return Err(Error::parse(input, offset, format!("{base} is only defined on E6/P1")));
    }
    Err(Error::parse(
        input,
        offset,
        format!("unknown bundle {base:?}; expected O, S, S2, S3, T, Om, E[..] or E_{{..}}"),
    ))
}

/// Parses `ω3+2ω5`, `2w6-3w1`, `0`.
fn parse_omega_sum(input: &str, offset: usize, text: &str, rank: usize) -> Result<Weight> {
    let normalized: String = text.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
    let mut w = Weight::zero(rank);
    if normalized == "0" {
        return Ok(w);
    }
    let mut chars = normalized.char_indices().peekable();
    while chars.peek().is_some() {
        let (start, _) = *chars.peek().unwrap();
        let mut sign = BigInt::one();
        if let Some(&(_, c)) = chars.peek() {
            if c == '+' || c == '-' {
                if c == '-' {
                    sign = -sign;
                }
                chars.next();
            }
        }
        let mut coef = String::new();
        while let Some(&(_, c)) = chars.peek() {
            if c.is_ascii_digit() {
                coef.push(c);
                chars.next();
            } else {
                break;
            }
        }
        match chars.next() {
            Some((_, 'ω')) | Some((_, 'w')) => {}
            _ => return Err(Error::parse(input, offset + start, "expected ω<node> (or w<node>)")),
        }
        let mut idx = String::new();
        while let Some(&(_, c)) = chars.peek() {
            if c.is_ascii_digit() {
                idx.push(c);
                chars.next();
            } else {
                break;
            }
        }
        let node: usize = idx
            .parse()
            .map_err(|_| Error::parse(input, offset + start, "expected a node index after ω"))?;
        if node == 0 || node > rank {
            return Err(Error::NodeOutOfRange { node, rank });
        }
        let magnitude = if coef.is_empty() { BigInt::one() } else { coef.parse::<BigInt>().expect("digits") };
        *w.coeff_mut(node - 1) += sign * magnitude;
    }
    Ok(w)
}

/// Parses a collection file: one bundle name per line, `#` starts a comment.
pub fn parse_collection(p: &ParabolicData, text: &str) -> Result<Vec<BundleRef>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let b = BundleRef::parse(p, content).map_err(|e| match e {
            Error::Parse { position, message, .. } => Error::Parse {
                input: line.to_string(),
                position,
                message: format!("line {}: {message}", lineno + 1),
            },
            other => other,
        })?;
        out.push(b);
    }
    Ok(out)
}

/// The 27-term strongly exceptional collection on E6/P1, in order.
pub fn cayley_plane_collection() -> Vec<BundleRef> {
    parse_collection(&ParabolicData::cayley_plane(), CAYLEY_PLANE_COLLECTION)
        .expect("bundled collection file parses")
}

/// Text of the bundled collection file.
pub fn cayley_plane_collection_text() -> &'static str {
    CAYLEY_PLANE_COLLECTION
}

/// `Hom(E_a, E_b) = E_a^∨ ⊗ E_b` split into irreducibles.
pub fn hom_bundle(p: &ParabolicData, a: &Weight, b: &Weight) -> Result<Decomposition> {
    p.check_levi_dominant(b)?;
    klimyk_tensor(p, &p.dual_weight(a)?, b)
}

/// `Ext^•(E_a, E_b) = H^•(Hom(E_a, E_b))`, valid for irreducible homogeneous bundles.
pub fn ext_groups(p: &ParabolicData, a: &Weight, b: &Weight) -> Result<GradedCohomology> {
    cohomology_of_decomposition(p, &hom_bundle(p, a, b)?)
}

/// A nonzero group that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Offender {
    pub degree: usize,
    pub summand: Weight,
    /// Dominant weight `μ` of the group `V^∨_μ`.
    pub weight: Weight,
    /// Dimension of the offending part (all copies).
    pub dim: BigInt,
}

fn offenders_of_endomorphisms(ext: &GradedCohomology) -> Vec<Offender> {
    let mut out = Vec::new();
    let mut trivial_seen = false;
    for (q, e) in ext.entries() {
        let mut dim = e.total_dim();
        if q == 0 && e.weight.is_zero() && !trivial_seen {
            trivial_seen = true;
            dim -= &e.dim;
            if dim.is_zero() {
                continue;
            }
        }
        out.push(Offender { degree: q, summand: e.summand.clone(), weight: e.weight.clone(), dim });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalityCheck {
    pub exceptional: bool,
    pub offenders: Vec<Offender>,
}

/// `E_a` is exceptional iff `H^•(End(E_a)) = C` in degree 0.
pub fn is_exceptional(p: &ParabolicData, a: &Weight) -> Result<ExceptionalityCheck> {
    let ext = ext_groups(p, a, a)?;
    let mut offenders = offenders_of_endomorphisms(&ext);
    if ext.dim(0).is_zero() {
        return Err(Error::Internal(format!("End of {a} has no global sections")));
    }
    offenders.sort();
    Ok(ExceptionalityCheck { exceptional: offenders.is_empty() && ext.is_trivial_in_degree_zero(), offenders })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `i = j`: endomorphisms beyond the scalars.
    Diagonal,
    /// `i < j`, positive degree (strong mode only).
    Forward,
    /// `i > j`, any degree.
    Backward,
}

/// A nonvanishing `Ext^q(F_i, F_j)` that breaks the collection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExtWitness {
    /// 1-based positions.
    pub i: usize,
    pub j: usize,
    pub degree: usize,
    pub summand: Weight,
    pub weight: Weight,
    pub dim: BigInt,
    pub direction: Direction,
}

impl ExtWitness {
    /// `(2,1) q=16 dim=1 via O(−12)`.
    pub fn render(&self, p: &ParabolicData) -> String {
        format!(
            "({},{}) q={} dim={} via {} [{:?}]",
            self.i,
            self.j,
            self.degree,
            self.dim,
            bundle_name(p, &self.summand),
            self.direction
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exceptional,
    Strong,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollectionReport {
    pub verdict: Verdict,
    pub mode: Mode,
    pub members: usize,
    pub pair_count: usize,
    pub witnesses: Vec<ExtWitness>,
    pub elapsed_micros: u64,
}

/// Checks every required Ext vanishing of an ordered collection and collects all
/// witnesses, not just the first.
pub fn verify_collection(p: &ParabolicData, bundles: &[BundleRef], strong: bool) -> Result<CollectionReport> {
    let started = Instant::now();
    if bundles.is_empty() {
        return Err(Error::Internal("empty collection".into()));
    }
    let n = bundles.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| strong || i >= j)
        .collect();
    let per_pair: Result<Vec<Vec<ExtWitness>>> = pairs
        .par_iter()
        .map(|&(i, j)| pair_witnesses(p, bundles, i, j))
        .collect();
    let mut witnesses: Vec<ExtWitness> = per_pair?.into_iter().flatten().collect();
    witnesses.sort();
    Ok(CollectionReport {
        verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        mode: if strong { Mode::Strong } else { Mode::Exceptional },
        members: n,
        pair_count: pairs.len(),
        witnesses,
        elapsed_micros: started.elapsed().as_micros() as u64,
    })
}

fn pair_witnesses(p: &ParabolicData, bundles: &[BundleRef], i: usize, j: usize) -> Result<Vec<ExtWitness>> {
    let ext = ext_groups(p, &bundles[i].weight, &bundles[j].weight)?;
    let make = |o: Offender, direction| ExtWitness {
        i: i + 1,
        j: j + 1,
        degree: o.degree,
        summand: o.summand,
        weight: o.weight,
        dim: o.dim,
        direction,
    };
    let offenders: Vec<(Offender, Direction)> = if i == j {
        let mut v = offenders_of_endomorphisms(&ext);
        if ext.dim(0).is_zero() {
            return Err(Error::Internal(format!("End of {} has no global sections", bundles[i])));
        }
        v.sort();
        v.into_iter().map(|o| (o, Direction::Diagonal)).collect()
    } else {
        let direction = if i > j { Direction::Backward } else { Direction::Forward };
        ext.entries()
            .filter(|(q, _)| direction == Direction::Backward || *q > 0)
            .map(|(q, e)| {
                (
                    Offender { degree: q, summand: e.summand.clone(), weight: e.weight.clone(), dim: e.total_dim() },
                    direction,
                )
            })
            .collect()
    };
    Ok(offenders.into_iter().map(|(o, d)| make(o, d)).collect())
}

/// Number of Schubert classes `|W/W_P|`, computed as the Weyl orbit of the crossed
/// fundamental weight. Only minuscule crossed nodes are supported.
pub fn schubert_rank(p: &ParabolicData) -> Result<usize> {
    let c = p.crossed_node()?;
    let r = p.root_system();
    if r.positive_roots().iter().any(|root| root.simple[c] > 1) {
        return Err(Error::UnsupportedParabolic(format!(
            "{p}: node {} is not minuscule",
            c + 1
        )));
    }
    Ok(r.weyl_orbit(&r.fundamental(c))?.len())
}
