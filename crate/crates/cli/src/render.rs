//! Text and JSON rendering of certificates and decompositions.

use serde::{Deserialize, Serialize};
use waring_core::apolarity::LowerBoundRecord;
use waring_core::{BinaryForm, Classification, Decomposition, LinearForm, RankCertificate, Scalar, Term};

/// JSON document written by `decompose` and `rank`, and read back by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    /// The parsed form, rendered in the input syntax.
    pub form: String,
    pub degree: usize,
    pub classification: Classification,
    pub rank: Option<usize>,
    #[serde(default)]
    pub omega: Option<Vec<Scalar>>,
    #[serde(default)]
    pub terms: Vec<Term>,
    /// `null` when verification was skipped.
    #[serde(default)]
    pub verified: Option<bool>,
    #[serde(default)]
    pub extrapolated: bool,
    #[serde(default)]
    pub lower_bound_certificate: Option<LowerBoundRecord>,
}

impl CertificateJson {
    pub fn new(input: Option<&str>, f: &BinaryForm, cert: &RankCertificate, dec: Option<&Decomposition>) -> Self {
        CertificateJson {
            input: input.map(str::to_owned),
            form: f.to_string(),
            degree: f.degree(),
            classification: cert.classification,
            rank: cert.rank,
            omega: cert.omega.as_ref().map(|o| o.coeffs().to_vec()),
            terms: dec.map(|d| d.terms.clone()).unwrap_or_default(),
            verified: None,
            extrapolated: false,
            lower_bound_certificate: cert.lower_bound.clone(),
        }
    }

    pub fn decomposition(&self) -> Decomposition {
        Decomposition::new(self.degree, self.terms.clone())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson<'a> {
    pub error: ErrorBody<'a>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody<'a> {
    pub code: &'a str,
    pub message: String,
}

fn power(l: &LinearForm, d: usize) -> String {
    let base = l.to_string();
    let bare = base == "x" || base == "y";
    match (d, bare) {
        (1, _) => base,
        (_, true) => format!("{base}^{d}"),
        _ => format!("({base})^{d}"),
    }
}

/// `f = l1 (L1)^d + l2 (L2)^d + ...` in a form the parser does not read
/// back; for display only.
pub fn sum_of_powers(dec: &Decomposition) -> String {
    let mut out = String::new();
    for (i, t) in dec.terms.iter().enumerate() {
        let p = power(&t.form, dec.degree);
        match t.lambda.as_rational() {
            Some(q) => {
                let neg = q < &num_traits::Zero::zero();
                let a = if neg { -q.clone() } else { q.clone() };
                let sep = match (i, neg) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                };
                out.push_str(sep);
                if a == num_traits::One::one() {
                    out.push_str(&p);
                } else {
                    out.push_str(&format!("{a}*{p}"));
                }
            }
            None => {
                if i > 0 {
                    out.push_str(" + ");
                }
                out.push_str(&format!("({})*{p}", t.lambda));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn certificate_text(doc: &CertificateJson) -> String {
    let mut s = format!("form: {}\ndegree: {}\nclassification: {}\n", doc.form, doc.degree, doc.classification);
    match doc.rank {
        Some(r) => s.push_str(&format!("rank: {r}\n")),
        None => s.push_str("rank: unknown\n"),
    }
    if let Some(o) = &doc.omega {
        s.push_str(&format!("omega: {}\n", waring_core::DiffOperator::new(o.clone())));
    }
    if let Some(lb) = &doc.lower_bound_certificate {
        s.push_str(&format!(
            "lower bound: rank >= {} (apolar spaces in degrees 1..{} checked)\n",
            lb.certified_lower_bound,
            lb.form_degree.saturating_sub(1)
        ));
    }
    if !doc.terms.is_empty() {
        s.push_str(&format!("decomposition: {}\n", sum_of_powers(&doc.decomposition())));
        for t in &doc.terms {
            s.push_str(&format!("  lambda = {}, L = {}\n", t.lambda, t.form));
        }
    }
    if doc.extrapolated {
        s.push_str("note: prescribed form honored for a general definite annihilator\n");
    }
    match doc.verified {
        Some(true) => s.push_str("verified: yes\n"),
        Some(false) => s.push_str("verified: NO\n"),
        None => {}
    }
    s
}
