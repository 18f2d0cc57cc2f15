use bbw_core::bott::{CohomologyResult, GradedCohomology};
use bbw_core::collection::{bundle_name, compact_weight};
use bbw_core::root_system::Walk;
use bbw_core::{ParabolicData, Weight};
use num_bigint::BigInt;
use num_traits::One;

/// `V^∨_0` or `V^∨_{ω1+ω6}`.
pub fn dual_module(weight: &Weight) -> String {
    if weight.is_zero() {
        "V^\u{2228}_0".to_string()
    } else {
        format!("V^\u{2228}_{{{}}}", compact_weight(weight))
    }
}

/// `C` for the trivial module, otherwise as [`dual_module`].
pub fn group(weight: &Weight, dim: &BigInt) -> String {
    if weight.is_zero() && dim.is_one() {
        "C".to_string()
    } else {
        dual_module(weight)
    }
}

pub fn cohomology(result: &CohomologyResult) -> String {
    match result {
        CohomologyResult::Acyclic => "Acyclic".to_string(),
        CohomologyResult::NonZero { degree, weight, dim } => {
            format!("H^{degree} = {}, dim {dim}", dual_module(weight))
        }
    }
}

/// One line per nonzero group: `H^8(E_{4ω6}(−8)) = C, dim 1`.
pub fn graded(p: &ParabolicData, g: &GradedCohomology) -> Vec<String> {
    g.entries()
        .map(|(q, e)| {
            let copies = if e.multiplicity.is_one() { String::new() } else { format!("{}\u{b7}", e.multiplicity) };
            format!(
                "H^{q}({}) = {copies}{}, dim {}",
                bundle_name(p, &e.summand),
                group(&e.weight, &e.dim),
                e.total_dim()
            )
        })
        .collect()
}

pub fn trace(walk: &Walk, start: &Weight) -> Vec<String> {
    let mut lines = vec![format!("  \u{3bb}+\u{3c1} = {}", start.to_csv())];
    for step in &walk.steps {
        lines.push(format!("  s{} \u{2192} {}", step.node + 1, step.weight.to_csv()));
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use bbw_core::bott::cohomology_traced;

    #[test]
    fn groups() {
        assert_eq!(dual_module(&Weight::zero(6)), "V^∨_0");
        assert_eq!(dual_module(&Weight::from_ints(&[1, 0, 0, 0, 0, 1])), "V^∨_{ω1+ω6}");
        assert_eq!(group(&Weight::zero(6), &BigInt::one()), "C");
        assert_eq!(cohomology(&CohomologyResult::Acyclic), "Acyclic");
    }

    #[test]
    fn flagship_line_and_trace() {
        let p = ParabolicData::cayley_plane();
        let w = Weight::from_ints(&[-13, 0, 0, 0, 0, 1]);
        let (res, walk) = cohomology_traced(&p, &w).unwrap();
        assert_eq!(cohomology(&res), "H^16 = V^∨_{ω1}, dim 27");
        let lines = trace(&walk, &(&w + p.root_system().rho()));
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], "  λ+ρ = -12,1,1,1,1,2");
        assert!(lines[1].starts_with("  s1 → 12,"));
        assert_eq!(lines[16].rsplit(' ').next().unwrap(), "2,1,1,1,1,1");
    }
}
