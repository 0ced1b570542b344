//! The classification report written by `classify`.

use serde::{Deserialize, Serialize};
use symclass::base::{base_from_triple, classify_base, planar_model, BasePoint, PlanarModel, Stratum, Wall};
use symclass::components::{
    component_of_label, is_strongly_stable_sheet, label_of, normal_form, project, ComponentId, Quotient,
};
use symclass::mat::{eigs, Spectrum};
use symclass::signatures::{b_signature, krein_signature, stability_check, StabilityVerdict};
use symclass::{Error, WonenburgerTriple};

use crate::error::Result;
use crate::input::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BTypeEntry {
    pub mu: f64,
    pub sign: String,
}

/// Krein type `(p, q)` of an eigenvalue in the upper half of the unit
/// circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KreinReport {
    pub re: f64,
    pub im: f64,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientPair<T> {
    pub spi: T,
    pub sp4: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub parameters: Vec<f64>,
    pub signs: String,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Vec<f64>,
    /// `R` row-major with `R·t = representative`; absent off the regions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizing: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub input_sha256: String,
    pub tol: f64,
    pub quotient: Quotient,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<Stratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BasePoint>,
    pub bifurcation_locus: bool,
    pub eigenvalues_a: Vec<EigenEntry>,
    pub eigenvalues_m: Vec<EigenEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_types: Option<Vec<BTypeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub krein: Option<Vec<KreinReport>>,
    pub stability: StabilityVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<QuotientPair<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<QuotientPair<Option<ComponentId>>>,
    /// Component in the selected quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<ComponentId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strongly_stable_sheet: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planar: Option<PlanarModel>,
    pub notes: Vec<String>,
}

fn eigen_entries(s: &Spectrum) -> Vec<EigenEntry> {
    s.eigenvalues
        .iter()
        .map(|e| EigenEntry {
            re: e.value.re,
            im: e.value.im,
            multiplicity: e.multiplicity,
            geometric: e.geometric,
        })
        .collect()
}

fn krein_entries(m: &symclass::SquareMatrix, spec: &Spectrum, tol: f64) -> Result<Vec<KreinReport>> {
    let band = tol.sqrt();
    let mut out = Vec::new();
    for e in &spec.eigenvalues {
        let z = e.value;
        if z.im <= 0.0 || (z.norm() - 1.0).abs() > band {
            continue;
        }
        let (p, q) = krein_signature(m, z, tol)?;
        out.push(KreinReport { re: z.re, im: z.im, p, q });
    }
    Ok(out)
}

/// Builds the report of a validated triple.
pub fn classify_triple(t: &WonenburgerTriple, quotient: Quotient, tol: f64, input_sha256: &str) -> Result<ReportDocument> {
    let m = t.assemble();
    let spec_a = eigs(t.a(), tol)?;
    let spec_m = eigs(&m, tol)?;
    let krein = krein_entries(&m, &spec_m, tol)?;
    let mut report = ReportDocument {
        schema: SCHEMA_VERSION,
        input_sha256: input_sha256.to_string(),
        tol,
        quotient,
        n: t.n(),
        stratum: None,
        base: None,
        bifurcation_locus: false,
        eigenvalues_a: eigen_entries(&spec_a),
        eigenvalues_m: eigen_entries(&spec_m),
        b_types: None,
        krein: (!krein.is_empty()).then_some(krein),
        stability: stability_check(&m, tol)?,
        labels: None,
        components: None,
        component: None,
        strongly_stable_sheet: None,
        normal_form: None,
        planar: None,
        notes: Vec::new(),
    };

    match b_signature(t, tol) {
        Ok(bt) => {
            report.b_types = Some(
                bt.iter()
                    .map(|b| BTypeEntry {
                        mu: b.mu,
                        sign: b.sign.to_string(),
                    })
                    .collect(),
            )
        }
        Err(Error::ComplexEigenvalues) => {}
        Err(Error::NonDiagonalizable) => report
            .notes
            .push("A is not diagonalizable; B-signs are read from the normal form".into()),
        Err(e) => return Err(e.into()),
    }

    if t.n() == 1 {
        let planar = planar_model(t, tol)?;
        report.bifurcation_locus = matches!(planar.spi, symclass::base::PlanarClass::Boundary { .. });
        if report.bifurcation_locus {
            report.notes.push("eigenvalue ±1: on the bifurcation locus".into());
        }
        report.planar = Some(planar);
        return Ok(report);
    }

    let base = base_from_triple(t)?;
    let stratum = classify_base(base, tol);
    report.base = Some(base);
    report.stratum = Some(stratum);
    report.bifurcation_locus = stratum.is_bifurcation_locus();

    let nf = normal_form(t, tol)?;
    let spi = label_of(&nf);
    let sp4 = project(&spi);
    let comp = |l, q| match component_of_label(l, q) {
        Ok(c) => Ok(Some(c)),
        Err(Error::OnBifurcationLocus(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let components = QuotientPair {
        spi: comp(&spi, Quotient::SpI)?,
        sp4: comp(&sp4, Quotient::Sp4)?,
    };
    report.component = match quotient {
        Quotient::SpI => components.spi,
        Quotient::Sp4 => components.sp4,
    };
    report.components = Some(components);
    report.strongly_stable_sheet = Some(is_strongly_stable_sheet(&spi));
    report.labels = Some(QuotientPair {
        spi: spi.to_string(),
        sp4: sp4.to_string(),
    });
    let (a, b, c) = nf.representative.clone().into_parts();
    report.normal_form = Some(NormalFormReport {
        parameters: nf.parameters.clone(),
        signs: nf.signs.iter().map(|s| s.symbol()).collect(),
        a: a.to_vec(),
        b: b.to_vec(),
        c: c.to_vec(),
        realizing: nf.realizing.as_ref().map(|g| g.matrix().to_vec()),
    });

    if let Stratum::Singular(_) = stratum {
        report
            .notes
            .push(format!("singular point {stratum}: on the bifurcation locus, no component id"));
    } else if report.bifurcation_locus {
        let wall = match stratum {
            Stratum::Wall(w) if w.wall() == Wall::PlusOne => "+1",
            _ => "-1",
        };
        report.notes.push(format!(
            "A has eigenvalue {wall}: on the bifurcation locus, no component id"
        ));
    } else if matches!(stratum, Stratum::Wall(_)) {
        report
            .notes
            .push("A has a double eigenvalue: on the discriminant".into());
    }
    Ok(report)
}
