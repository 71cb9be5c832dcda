//! The one-shot reproduction suite behind `cohom report`.

use std::ops::RangeInclusive;

use cohom_core::catalog::{self, even_middle_names, poincare_polynomial, space_data, SpaceId, SpaceSpec, Variant};
use cohom_core::distinguish::{self, check_witness, groups_equal, invariants_of, isomorphism_search, PowerIndex};
use cohom_core::grading::{parse_polynomial, validate_homogeneous, GradedRing};
use cohom_core::gysin::{required_d2_profile, run_catalog, D2Constraint};
use cohom_core::homotopy::FibrationSpec;
use cohom_core::{FgAbelianGroup, Provenance, RingElement};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteInputs {
    pub k_min: u32,
    pub k_max: u32,
    pub hopf_max: u32,
    pub variant: Variant,
}

impl Default for SuiteInputs {
    fn default() -> Self {
        SuiteInputs {
            k_min: 2,
            k_max: 8,
            hopf_max: 6,
            variant: Variant::Corrected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub subject: String,
    pub variant: Variant,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub inputs: SuiteInputs,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub passed: usize,
    pub failed: usize,
}

impl ReportDocument {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} {} report, k = {}..{}, hopf n = 1..{}, variant {}\n",
            self.tool, self.version, self.inputs.k_min, self.inputs.k_max, self.inputs.hopf_max, self.inputs.variant
        );
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {} {} [{}]: {}\n", c.id, c.subject, c.variant, c.detail));
        }
        if !self.notes.is_empty() {
            out.push_str("notes:\n");
            for n in &self.notes {
                out.push_str(&format!("  {n}\n"));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

type Check = Result<String, String>;

struct Collector {
    checks: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, id: &str, subject: String, variant: Variant, result: Check) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult {
            id: id.to_string(),
            subject,
            variant,
            passed,
            detail,
        });
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ring_at(s: SpaceId, variant: Variant, top: u32) -> Result<GradedRing, String> {
    GradedRing::compute(&catalog::presentation_with_top(s, variant, top).map_err(err)?).map_err(err)
}

fn element(r: &GradedRing, text: &str) -> Result<RingElement, String> {
    r.normal_form(&parse_polynomial(text, r.generators()).map_err(err)?).map_err(err)
}

fn odd_checks(c: &mut Collector, k: u32) {
    let g = SpaceId::GrassOdd(k);
    let cp = SpaceId::CP(2 * k - 1);
    let v = Variant::Corrected;
    let top = g.dimension() + 2;
    let pair = format!("{g} vs {cp}");
    let rings = ring_at(g, v, top).and_then(|a| Ok((a, ring_at(cp, v, top)?)));

    c.push("odd.groups", pair.clone(), v, (|| {
        let (a, b) = rings.clone()?;
        match groups_equal(&a, &b).map_err(err)? {
            (true, _) => Ok(format!("equal through degree {top}")),
            (false, d) => Err(format!("first mismatch in degree {d:?}")),
        }
    })());
    c.push("odd.relation", g.to_string(), v, (|| {
        let (a, _) = rings.clone()?;
        let (l, r) = (element(&a, &format!("x2^{k}"))?, element(&a, &format!("2*x{}", 2 * k))?);
        if l == r {
            Ok(format!("x2^{k} = 2*x{}", 2 * k))
        } else {
            Err(format!("x2^{k} reduces to {}", a.show(&l)))
        }
    })());
    c.push("odd.power-index", pair.clone(), v, (|| {
        let (a, b) = rings.clone()?;
        let ia = invariants_of(&a).map_err(err)?.power_indices.get(&k).cloned();
        let ib = invariants_of(&b).map_err(err)?.power_indices.get(&k).cloned();
        let show = |x: &Option<PowerIndex>| x.as_ref().map_or("-".into(), |i| i.to_string());
        if ia == Some(PowerIndex::Finite(2.into())) && ib == Some(PowerIndex::Finite(1.into())) {
            Ok(format!("index of g^{k}: {} vs {}", show(&ia), show(&ib)))
        } else {
            Err(format!("index of g^{k}: {} vs {}", show(&ia), show(&ib)))
        }
    })());
    let run = run_catalog(g, v, SpaceId::StiefelOdd(k)).map_err(err);
    c.push("odd.gysin", format!("{} over {g}", SpaceId::StiefelOdd(k)), v, (|| {
        let run = run.clone()?;
        if run.report.ok {
            Ok(format!("{} degrees verified", run.report.degrees.len()))
        } else {
            Err(format!("mismatch in degrees {:?}", run.report.mismatches()))
        }
    })());
    c.push("odd.d2-profile", g.to_string(), v, (|| {
        let run = run.clone()?;
        let profile = required_d2_profile(&run.ring.groups(), &run.expected).map_err(err)?;
        let mid = (2 * k - 2) as usize;
        let want = D2Constraint::InjectiveWithCokernel(FgAbelianGroup::cyclic(2));
        let bad: Vec<String> = (0..=(4 * k - 4) as usize)
            .filter(|&p| {
                let ok = if p == mid { profile[p] == want } else { profile[p] == D2Constraint::Iso };
                !ok || !profile[p].is_satisfied_by(run.d2.at(p))
            })
            .map(|p| format!("{p}: {}", profile[p]))
            .collect();
        if bad.is_empty() {
            Ok(format!("d2 at {mid} is {want}, isomorphisms elsewhere"))
        } else {
            Err(format!("unexpected constraints {bad:?}"))
        }
    })());
    c.push("odd.verdict", pair, v, (|| {
        let level = (2 * k - 1) as usize;
        let r = distinguish::full_report(SpaceSpec::new(g, v), SpaceSpec::new(cp, v), level).map_err(err)?;
        if r.verdict == distinguish::VERDICT_DISTINCT && r.pi_first_difference == Some(level) {
            Ok(format!("{}; pi differs first at level {level}", r.verdict))
        } else {
            Err(format!("{}; pi difference {:?}", r.verdict, r.pi_first_difference))
        }
    })());
}

fn even_checks(c: &mut Collector, k: u32, variant: Variant) {
    let g = SpaceId::GrassEven(k);
    let subject = SpaceSpec::new(g, variant).to_string();
    let data = match space_data(g, variant) {
        Ok(d) => d,
        Err(e) => return c.push("even.presentation", subject, variant, Err(err(e))),
    };
    let p = data.presentation.clone();
    let violations = validate_homogeneous(&p);
    c.push("even.homogeneous", subject.clone(), variant, if violations.is_empty() {
        Ok("every relation is homogeneous".into())
    } else {
        Err(violations.iter().map(|v| format!("{} has degrees {:?}", v.relation, v.degrees)).collect::<Vec<_>>().join("; "))
    });
    let ring = GradedRing::compute_homogeneous_part(&p).map(|(r, _)| r).map_err(err);
    c.push("even.poincare", subject.clone(), variant, (|| {
        let r = ring.clone()?;
        let expected = poincare_polynomial(g).map_err(err)?;
        let bad: Vec<String> = expected
            .iter()
            .enumerate()
            .filter(|(d, &b)| r.group(*d as u32).free_rank() != b)
            .map(|(d, &b)| format!("degree {d}: rank {} vs {b}", r.group(d as u32).free_rank()))
            .collect();
        if bad.is_empty() {
            Ok(format!("ranks match, 2 in degree {}", 2 * k - 2))
        } else {
            Err(bad.join("; "))
        }
    })());
    c.push("even.torsion-free", subject.clone(), variant, (|| {
        let r = ring.clone()?;
        match (0..=r.top_degree()).find(|&d| !r.group(d).torsion().is_empty()) {
            None => Ok("no torsion".into()),
            Some(d) => Err(format!("torsion {} in degree {d}", r.group(d))),
        }
    })());
    c.push("even.gysin", format!("{} over {subject}", SpaceId::StiefelEven(k)), variant, (|| {
        let run = run_catalog(g, variant, SpaceId::StiefelEven(k)).map_err(err)?;
        if run.report.ok {
            Ok(format!("{} degrees verified", run.report.degrees.len()))
        } else {
            Err(format!("mismatch in degrees {:?}", run.report.mismatches()))
        }
    })());
    c.push("even.identities", subject.clone(), variant, (|| {
        let r = GradedRing::compute(&p).map_err(err)?;
        let (xm, ym) = even_middle_names(k);
        let o = r.orientation().map_err(err)?;
        let int = |t: String| -> Result<BigInt, String> { r.integrate(&element(&r, &t)?, &o).map_err(err) };
        let mut bad = Vec::new();
        if element(&r, &format!("2*{xm}"))? != element(&r, &format!("(-x2)^{} + {xm} - {ym}", k - 1))? {
            bad.push("2x = (-e)^(k-1) + eF".to_string());
        }
        if int(format!("{xm}^2"))? != BigInt::from(1) {
            bad.push("int x^2 = 1".into());
        }
        if int(format!("{xm}*{ym}"))? != BigInt::from(0) {
            bad.push("int xy = 0".into());
        }
        if element(&r, &format!("2*{ym}^2"))? != element(&r, &format!("x2^{}", 2 * k - 2))? {
            bad.push("2y^2 = x2^(2k-2)".into());
        }
        if bad.is_empty() {
            Ok("2x = (-e)^(k-1) + eF, int x^2 = 1, int xy = 0, 2y^2 = x2^(2k-2)".into())
        } else {
            Err(format!("failing: {}", bad.join(", ")))
        }
    })());
    if k == 2 {
        c.push("even.s2xs2-witness", format!("{subject} vs s2xs2"), variant, (|| {
            let a = GradedRing::compute(&p).map_err(err)?;
            let b = catalog::compute_space(SpaceId::S2xS2, Variant::Corrected).map_err(err)?;
            match isomorphism_search(&a, &b, 2).map_err(err)? {
                Some(w) if check_witness(&a, &b, &w.images).map_err(err)? => Ok(w.describe(&a, &b).join(", ")),
                Some(_) => Err("witness failed verification".into()),
                None => Err(format!(
                    "no witness within bound 2; intersection forms {} and {} differ in parity",
                    form(&a)?,
                    form(&b)?
                )),
            }
        })());
    }
}

fn form(r: &GradedRing) -> Result<String, String> {
    let o = r.orientation().map_err(err)?;
    let n = r.group(2).num_generators();
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let p = r.cup(&r.basis_element(2, i), &r.basis_element(2, j)).map_err(err)?;
            row.push(r.integrate(&p, &o).map_err(err)?.to_string());
        }
        rows.push(format!("[{}]", row.join(",")));
    }
    Ok(format!("[{}]", rows.join(",")))
}

fn hopf_checks(c: &mut Collector, n: u32) {
    let v = Variant::Corrected;
    c.push("hopf.gysin", format!("{} over {}", SpaceId::Sphere(2 * n + 1), SpaceId::CP(n)), v, (|| {
        let run = run_catalog(SpaceId::CP(n), v, SpaceId::Sphere(2 * n + 1)).map_err(err)?;
        if run.report.ok {
            Ok(format!("{} degrees verified", run.report.degrees.len()))
        } else {
            Err(format!("mismatch in degrees {:?}", run.report.mismatches()))
        }
    })());
    if n == 5 {
        c.push("hopf.pi", "cp:5".into(), v, (|| {
            let t = FibrationSpec::hopf(5).base_table(11).map_err(err)?;
            let want = "(0,0,Z,0,0,0,0,0,0,0,0,Z)";
            if t.to_string() == want {
                Ok(format!("pi = {t}"))
            } else {
                Err(format!("pi = {t}, expected {want}"))
            }
        })());
    }
}

pub fn paper_suite() -> ReportDocument {
    paper_suite_with(SuiteInputs::default())
}

pub fn paper_suite_with(inputs: SuiteInputs) -> ReportDocument {
    let mut c = Collector { checks: Vec::new() };
    let ks: RangeInclusive<u32> = inputs.k_min..=inputs.k_max;
    for k in ks.clone() {
        odd_checks(&mut c, k);
        even_checks(&mut c, k, inputs.variant);
    }
    for n in 1..=inputs.hopf_max {
        hopf_checks(&mut c, n);
    }
    let mut notes = Vec::new();
    if let Some(k) = ks.clone().next() {
        if let Ok(d) = space_data(SpaceId::GrassEven(k), inputs.variant) {
            notes.extend(d.notes.iter().map(|n| format!("{}: {n}", SpaceSpec::new(d.space, d.variant))));
            for (rel, prov) in d.presentation.relations().iter().zip(&d.provenance) {
                if let Provenance::Corrected { justification } = prov {
                    notes.push(format!("corrected relation {}: {justification}", d.presentation.show(rel)));
                }
            }
        }
        if let Ok(d) = space_data(SpaceId::StiefelEven(k), Variant::Corrected) {
            notes.extend(d.notes.iter().map(|n| format!("{}: {n}", d.space)));
        }
    }
    if inputs.variant == Variant::Verbatim {
        notes.push("even-family checks run on the printed relations; their failures are the documented ones".into());
    }
    let failed = c.checks.iter().filter(|x| !x.passed).count();
    ReportDocument {
        tool: "cohom".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        inputs,
        passed: c.checks.len() - failed,
        failed,
        checks: c.checks,
        notes,
    }
}
