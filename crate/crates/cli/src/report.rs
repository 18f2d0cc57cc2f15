//! The reproduction report: every checkable claim about the Cayley plane E6/P1,
//! recomputed from scratch, with expected and computed values side by side.

use std::fmt::Write as _;
use std::time::Instant;

use bbw_core::bott::{
    cohomology, cohomology_of_decomposition, cohomology_traced, decomposition_twist_range, serre_check,
    serre_partner, CohomologyResult,
};
use bbw_core::collection::{
    bundle_name, cayley_plane_collection, hom_bundle, is_exceptional, render_decomposition, schubert_rank,
    verify_collection, BundleRef, Verdict,
};
use bbw_core::rep_theory::klimyk_tensor;
use bbw_core::{Decomposition, ParabolicData, Result, Weight};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::render;

pub const SCHEMA_VERSION: u32 = 1;

pub const CONVENTION: &str = "Bourbaki labelling of E6: chain 1-3-4-5-6 with node 2 attached to node 4; \
P1 crosses node 1; weights are coefficients on the fundamental weights ω1..ω6";

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_micros: u64,
    pub collection_micros: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub space: String,
    pub convention: String,
    pub claims: Vec<Claim>,
    pub verdict: Verdict,
    pub timings: Timings,
}

impl ReportDocument {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} reproduction report for {}", self.tool, self.version, self.space);
        let _ = writeln!(out, "convention: {}", self.convention);
        for c in &self.claims {
            let _ = writeln!(out, "{} {}: {}", c.verdict, c.id, c.statement);
            let _ = writeln!(out, "     expected: {}", c.expected);
            let _ = writeln!(out, "     computed: {}", c.computed);
            for d in &c.details {
                let _ = writeln!(out, "       {d}");
            }
        }
        let failed = self.failed().count();
        let _ = writeln!(out, "overall: {} ({} of {} claims failed)", self.verdict, failed, self.claims.len());
        let _ = writeln!(
            out,
            "time: {} ms (collection check {} ms)",
            self.timings.total_micros / 1000,
            self.timings.collection_micros / 1000
        );
        out
    }
}

struct Builder<'a> {
    p: &'a ParabolicData,
    claims: Vec<Claim>,
}

impl<'a> Builder<'a> {
    fn push(&mut self, id: &str, statement: &str, expected: impl Into<String>, computed: impl Into<String>, pass: bool) {
        self.push_detailed(id, statement, expected, computed, pass, Vec::new());
    }

    fn push_detailed(
        &mut self,
        id: &str,
        statement: &str,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
        details: Vec<String>,
    ) {
        self.claims.push(Claim {
            id: id.to_string(),
            statement: statement.to_string(),
            expected: expected.into(),
            computed: computed.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            details,
        });
    }

    fn eq(&mut self, id: &str, statement: &str, expected: impl Into<String>, computed: impl Into<String>) {
        let (e, c) = (expected.into(), computed.into());
        let pass = e == c;
        self.push(id, statement, e, c, pass);
    }

    fn bundle(&self, name: &str) -> Result<Weight> {
        Ok(BundleRef::parse(self.p, name)?.weight)
    }

    fn decomposition(&self, text: &str) -> Result<Decomposition> {
        let mut d = Decomposition::new();
        for part in text.split('\u{2295}') {
            d.add(self.bundle(part.trim())?, BigInt::one());
        }
        Ok(d)
    }

    fn decomposition_claim(&mut self, id: &str, statement: &str, expected: &str, computed: Decomposition) -> Result<()> {
        let expected = self.decomposition(expected)?;
        let pass = expected == computed;
        let (e, c) = (render_decomposition(self.p, &expected), render_decomposition(self.p, &computed));
        let details = vec![
            format!("rank of the expected sum: {}", expected.dimension(self.p)?),
            format!("rank of the computed sum: {}", computed.dimension(self.p)?),
        ];
        self.push_detailed(id, statement, e, c, pass, details);
        Ok(())
    }

    /// Twists in `[t_min, t_max]` where some summand has cohomology; expected none.
    fn acyclic_claim(&mut self, id: &str, statement: &str, dec: &Decomposition, t_min: i64, t_max: i64) -> Result<()> {
        let hits = decomposition_twist_range(self.p, dec, t_min, t_max)?;
        let computed = if hits.is_empty() {
            "none".to_string()
        } else {
            hits.iter().map(|(t, _)| t.to_string()).collect::<Vec<_>>().join(", ")
        };
        let details = hits
            .iter()
            .flat_map(|(t, g)| render::graded(self.p, g).into_iter().map(move |l| format!("twist {t}: {l}")))
            .collect();
        let pass = hits.is_empty();
        self.push_detailed(
            id,
            statement,
            format!("no cohomology for twists {t_min}..{t_max}"),
            if pass { format!("no cohomology for twists {t_min}..{t_max}") } else { format!("cohomology at twists {computed}") },
            pass,
            details,
        );
        Ok(())
    }
}

fn single(w: Weight) -> Decomposition {
    Decomposition::single(w)
}

/// Runs every claim in order. `collection` replaces the bundled 27-term list.
pub fn reproduce(collection: Option<Vec<BundleRef>>) -> Result<ReportDocument> {
    let started = Instant::now();
    let p = ParabolicData::cayley_plane();
    let r = p.root_system();
    let mut b = Builder { p: &p, claims: Vec::new() };

    // conventions
    let highest = r.highest_root().weight.clone();
    b.eq(
        "convention.highest_root",
        "the highest root of E6 is ω2 (weight of the tangent bundle)",
        "ω2",
        highest.to_string(),
    );
    let levi_dim = |name: &str| -> Result<String> { Ok(p.levi_dimension(&b.bundle(name)?)?.to_string()) };
    let s_dim = levi_dim("S")?;
    let t_dim = levi_dim("T")?;
    b.eq("convention.dim.S", "S = E_{ω6} comes from the 10-dimensional vector representation of Spin10", "10", s_dim);
    b.eq("convention.dim.T", "T = E_{ω2} comes from a 16-dimensional half-spin representation", "16", t_dim);
    b.eq(
        "convention.dim.V_omega1",
        "V_{ω1} is the 27-dimensional minuscule representation",
        "27",
        r.weyl_dimension(&r.fundamental(0))?.to_string(),
    );

    // duality
    for (id, name, dual) in [("duality.S", "S", "S(−1)"), ("duality.S2", "S2", "S2(−2)"), ("duality.S3", "S3", "S3(−3)")] {
        let computed = bundle_name(&p, &p.dual_weight(&b.bundle(name)?)?);
        b.eq(id, &format!("{name}^∨ = {dual}"), dual, computed);
    }
    let om = p.dual_weight(&b.bundle("T")?)?;
    let om_h = cohomology(&p, &om)?;
    b.push_detailed(
        "duality.cotangent",
        "the cotangent bundle is E_{ω2−ω1}",
        "E_{ω2}(−1)",
        bundle_name(&p, &om),
        bundle_name(&p, &om) == "E_{ω2}(−1)",
        vec![
            format!("T^∨ = E_{{{}}} computed as −w0^L(ω2) in the E6 weight lattice", bbw_core::collection::compact_weight(&om)),
            format!("H^•(T^∨): {}", render::cohomology(&om_h)),
        ],
    );

    // canonical bundle
    let k = p.canonical_weight();
    b.eq("canonical.weight", "the canonical bundle is O(−12)", "−12ω1", k.to_string());
    b.eq("canonical.index", "the index of the Cayley plane is 12", "12", p.index()?.to_string());
    let lines: Vec<BundleRef> = (0..12).map(|t| BundleRef::parse(&p, &format!("O({t})"))).collect::<Result<_>>()?;
    let kodaira = verify_collection(&p, &lines, true)?;
    b.eq(
        "canonical.kodaira",
        "O, O(1), …, O(11) is strongly exceptional",
        "PASS",
        kodaira.verdict.to_string(),
    );

    // exceptional bundles
    let s = b.bundle("S")?;
    let s2 = b.bundle("S2")?;
    let s3 = b.bundle("S3")?;
    b.decomposition_claim(
        "prop1.end.S",
        "End(S) splits into three irreducible bundles",
        "E_{ω5}(−1) ⊕ O ⊕ S2(−1)",
        hom_bundle(&p, &s, &s)?,
    )?;
    b.decomposition_claim(
        "prop1.end.S2",
        "End(S2) splits into six irreducible bundles",
        "E_{4ω6}(−2) ⊕ E_{ω5+2ω6}(−2) ⊕ E_{2ω5}(−2) ⊕ E_{2ω6}(−1) ⊕ E_{ω5}(−1) ⊕ O",
        hom_bundle(&p, &s2, &s2)?,
    )?;
    b.decomposition_claim(
        "prop1.end.S3",
        "End(S3) splits into ten irreducible bundles",
        "E_{6ω6}(−3) ⊕ E_{ω5+4ω6}(−3) ⊕ E_{2ω5+2ω6}(−3) ⊕ E_{3ω5}(−3) ⊕ E_{4ω6}(−2) ⊕ \
         E_{ω5+2ω6}(−2) ⊕ E_{ω3+2ω5}(−3) ⊕ E_{2ω6}(−1) ⊕ E_{ω5}(−1) ⊕ O",
        hom_bundle(&p, &s3, &s3)?,
    )?;
    for (name, w) in [("S", &s), ("S2", &s2), ("S3", &s3)] {
        let check = is_exceptional(&p, w)?;
        let ext = cohomology_of_decomposition(&p, &hom_bundle(&p, w, w)?)?;
        b.push_detailed(
            &format!("prop1.exceptional.{name}"),
            &format!("{name} is exceptional: H^i(End({name})) = δ_i0 C"),
            "H^0 = C only",
            if check.exceptional { "H^0 = C only".to_string() } else { format!("{} offending groups", check.offenders.len()) },
            check.exceptional,
            render::graded(&p, &ext),
        );
    }
    let wedge = b.bundle("E_{ω5}")?;
    let check = is_exceptional(&p, &wedge)?;
    let witness = check.offenders.iter().find(|o| o.degree == 1 && o.dim == BigInt::from(78));
    let expected_summand = b.bundle("E_{ω2+ω3}(−2)")?;
    b.push_detailed(
        "remark.wedge2.not_exceptional",
        "∧²S = E_{ω5} is not exceptional: End contains E_{ω2+ω3}(−2) with H^1 = e6",
        format!("not exceptional, witness {} q=1 dim=78", bundle_name(&p, &expected_summand)),
        match witness {
            Some(o) => format!("not exceptional, witness {} q={} dim={}", bundle_name(&p, &o.summand), o.degree, o.dim),
            None => format!("exceptional={}, {} offenders", check.exceptional, check.offenders.len()),
        },
        !check.exceptional && witness.is_some_and(|o| o.summand == expected_summand),
        check
            .offenders
            .iter()
            .map(|o| format!("{} q={} dim={}", bundle_name(&p, &o.summand), o.degree, o.dim))
            .collect(),
    );

    // tensor products
    let s2s = klimyk_tensor(&p, &s2, &s)?;
    let s3s = klimyk_tensor(&p, &s3, &s)?;
    let s3s2 = klimyk_tensor(&p, &s3, &s2)?;
    b.decomposition_claim("lemma6.decomposition", "S2 ⊗ S", "S3 ⊕ S(1) ⊕ E_{ω5+ω6}", s2s.clone())?;
    b.decomposition_claim("lemma7.decomposition", "S3 ⊗ S", "E_{4ω6} ⊕ S2(1) ⊕ E_{ω5+2ω6}", s3s.clone())?;
    b.decomposition_claim(
        "lemma8.decomposition",
        "S3 ⊗ S2",
        "E_{5ω6} ⊕ E_{ω5+3ω6} ⊕ E_{2ω5+ω6} ⊕ E_{ω5+ω6}(1) ⊕ S3(1) ⊕ S(2)",
        s3s2.clone(),
    )?;

    // vanishing ranges
    b.acyclic_claim("lemma1.acyclic", "S(−i) is acyclic for 1 ≤ i ≤ 12", &single(s.clone()), -12, -1)?;
    let flagship = b.bundle("S(−13)")?;
    let (res, walk) = cohomology_traced(&p, &flagship)?;
    b.eq(
        "lemma1.boundary.i13",
        "H^16(S(−13)) = V^∨_{ω1}, reached after 16 simple reflections",
        "H^16 = V^∨_{ω1}, dim 27, 16 reflections",
        format!("{}, {} reflections", render::cohomology(&res), walk.steps.len()),
    );
    b.acyclic_claim("lemma2.acyclic.S2", "S2(−i) is acyclic for 1 ≤ i ≤ 12", &single(s2.clone()), -12, -1)?;
    b.acyclic_claim("lemma2.acyclic.S3", "S3(−i) is acyclic for 1 ≤ i ≤ 12", &single(s3.clone()), -12, -1)?;
    let end_s = hom_bundle(&p, &s, &s)?;
    let end_s2 = hom_bundle(&p, &s2, &s2)?;
    let end_s3 = hom_bundle(&p, &s3, &s3)?;
    b.acyclic_claim("lemma3.acyclic", "End(S)(−i) is acyclic for 1 ≤ i ≤ 11", &end_s, -11, -1)?;
    b.acyclic_claim("lemma4.acyclic", "End(S2)(−i) is acyclic for 1 ≤ i ≤ 2", &end_s2, -2, -1)?;
    let boundary = b.bundle("E_{2ω5}(−5)")?;
    let res = cohomology(&p, &boundary)?;
    let computed = match &res {
        CohomologyResult::NonZero { degree, weight, dim } => {
            format!("H^{degree}({}) = {}", bundle_name(&p, &boundary), render::group(weight, dim))
        }
        CohomologyResult::Acyclic => format!("{} is acyclic", bundle_name(&p, &boundary)),
    };
    let stated = format!("H^3({}) = C", bundle_name(&p, &boundary));
    b.eq(
        "lemma4.boundary.i3",
        "for i = 3 the summand E_{2ω5}(−5) of End(S2)(−3) has H^3 = C",
        stated,
        computed,
    );
    let at3 = cohomology_of_decomposition(&p, &end_s2.shifted(&p.twist(&Weight::zero(6), -3)?))?;
    b.push_detailed(
        "lemma4.boundary.nonacyclic",
        "End(S2)(−3) is not acyclic",
        "not acyclic",
        if at3.is_zero() { "acyclic" } else { "not acyclic" },
        !at3.is_zero(),
        render::graded(&p, &at3),
    );
    b.acyclic_claim("lemma5.acyclic", "End(S3)(−1) is acyclic", &end_s3, -1, -1)?;
    b.acyclic_claim("lemma6.acyclic", "S2 ⊗ S(−i−1) is acyclic for 1 ≤ i ≤ 12", &s2s, -13, -2)?;
    b.acyclic_claim("lemma7.acyclic", "S3 ⊗ S(−i−1) is acyclic for 1 ≤ i ≤ 6", &s3s, -7, -2)?;
    let shift8 = p.twist(&Weight::zero(6), -8)?;
    let at8 = cohomology_of_decomposition(&p, &s3s.shifted(&shift8))?;
    let one_in_8 = at8.max_degree() == Some(8) && at8.dim(8).is_one() && at8.degrees().count() == 1;
    b.push_detailed(
        "lemma7.boundary.i7",
        "S3 ⊗ S(−8) is not acyclic: a degree-8 group of dimension 1",
        "H^8 = C",
        render::graded(&p, &at8).join("; "),
        one_in_8,
        Vec::new(),
    );
    b.claims.push(boundary_attribution(&p, &s3s.shifted(&shift8))?);
    b.acyclic_claim("lemma8.acyclic", "S3 ⊗ S2(−i−2) is acyclic for 1 ≤ i ≤ 2", &s3s2, -4, -3)?;
    let shift5 = p.twist(&Weight::zero(6), -5)?;
    let at5 = cohomology_of_decomposition(&p, &s3s2.shifted(&shift5))?;
    let third = b.bundle("E_{2ω5+ω6}(−5)")?;
    let culprits: Vec<String> = at5.entries().map(|(_, e)| bundle_name(&p, &e.summand)).collect();
    b.push_detailed(
        "lemma8.boundary.i3",
        "for i = 3 the third summand E_{2ω5+ω6} of S3 ⊗ S2 contributes non-trivially",
        format!("non-acyclic summands: {}", bundle_name(&p, &third)),
        format!("non-acyclic summands: {}", if culprits.is_empty() { "none".into() } else { culprits.join(", ") }),
        at5.entries().any(|(_, e)| e.summand == third),
        render::graded(&p, &at5),
    );

    // Serre duality and counting
    let partner = serre_partner(&p, &flagship)?;
    b.push_detailed(
        "serre.s_minus_13",
        "H^16(S(−13)) is dual to H^0(S^∨(1)) = H^0(S)",
        "consistent",
        if serre_check(&p, &flagship)? { "consistent" } else { "inconsistent" },
        serre_check(&p, &flagship)?,
        vec![format!(
            "partner {}: {}",
            bundle_name(&p, &partner),
            render::cohomology(&cohomology(&p, &partner)?)
        )],
    );
    b.eq(
        "schubert.rank",
        "the Cayley plane has 27 Schubert classes",
        "27",
        schubert_rank(&p)?.to_string(),
    );

    // the 27-term collection
    let collection = collection.unwrap_or_else(cayley_plane_collection);
    let report = verify_collection(&p, &collection, true)?;
    let expected = format!("PASS, 27 members, {} ordered pairs", 27 * 27);
    let computed = format!("{}, {} members, {} ordered pairs", report.verdict, report.members, report.pair_count);
    let pass = report.verdict == Verdict::Pass && report.members == 27;
    b.push_detailed(
        "theorem2.strong",
        "the 27 bundles O, S, O(1), …, O(11) form a strongly exceptional collection",
        expected,
        computed,
        pass,
        report.witnesses.iter().map(|w| w.render(&p)).collect(),
    );
    let closure = strong_closure(&p, &collection)?;
    b.push_detailed(
        "theorem2.closure",
        "every summand of Hom(F_i, F_j), i ≤ j, is G-dominant or acyclic",
        "no exceptions",
        if closure.is_empty() { "no exceptions".to_string() } else { format!("{} exceptions", closure.len()) },
        closure.is_empty(),
        closure,
    );

    let verdict = if b.claims.iter().all(|c| c.verdict == Verdict::Pass) { Verdict::Pass } else { Verdict::Fail };
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        tool: "bbw".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        space: p.to_string(),
        convention: CONVENTION.to_string(),
        claims: b.claims,
        verdict,
        timings: Timings {
            total_micros: started.elapsed().as_micros() as u64,
            collection_micros: report.elapsed_micros,
        },
    })
}

/// Which summands of `S3 ⊗ S(−8)` carry cohomology, each cross-checked by Serre duality.
fn boundary_attribution(p: &ParabolicData, twisted: &Decomposition) -> Result<Claim> {
    let mut culprits = Vec::new();
    let mut details = Vec::new();
    let mut serre_ok = true;
    for (w, _) in twisted.iter() {
        let res = cohomology(p, w)?;
        let consistent = serre_check(p, w)?;
        serre_ok &= consistent;
        details.push(format!(
            "{}: {}; Serre partner {} {}",
            bundle_name(p, w),
            render::cohomology(&res),
            bundle_name(p, &serre_partner(p, w)?),
            if consistent { "agrees" } else { "disagrees" }
        ));
        if !res.is_acyclic() {
            culprits.push(bundle_name(p, w));
        }
    }
    let computed = if culprits.is_empty() { "none".to_string() } else { culprits.join(", ") };
    Ok(Claim {
        id: "lemma7.attribution".to_string(),
        statement: "the summand of S3 ⊗ S(−8) carrying H^8 = C (the text names E_{ω5+2ω6}(−8), \
                    the traced sequence is that of E_{4ω6}(−8))"
            .to_string(),
        expected: "exactly one non-acyclic summand, Serre-consistent".to_string(),
        computed: format!("non-acyclic: {computed}"),
        verdict: if culprits.len() == 1 && serre_ok { Verdict::Pass } else { Verdict::Fail },
        details,
    })
}

fn strong_closure(p: &ParabolicData, bundles: &[BundleRef]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, a) in bundles.iter().enumerate() {
        for (j, c) in bundles.iter().enumerate().skip(i) {
            for (w, _) in hom_bundle(p, &a.weight, &c.weight)?.iter() {
                if !w.is_dominant() && !cohomology(p, w)?.is_acyclic() {
                    out.push(format!("({},{}) {}", i + 1, j + 1, bundle_name(p, w)));
                }
            }
        }
    }
    Ok(out)
}
