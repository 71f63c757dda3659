use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::forms::{apply, operator_product, proportional, BinaryForm, DiffOperator};

use super::Decomposition;

/// Outcome of each independent check on a claimed decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// All scalars live in one quadratic extension; when false no other
    /// check was attempted.
    pub single_extension: bool,
    pub degree_matches: bool,
    pub expansion_matches: bool,
    pub lambdas_nonzero: bool,
    pub pairwise_non_proportional: bool,
    pub rank_matches: Option<bool>,
    /// Product of apolar operators kills `f` and no `(r-1)`-subproduct does.
    pub apolarity: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.single_extension
            && self.degree_matches
            && self.expansion_matches
            && self.lambdas_nonzero
            && self.pairwise_non_proportional
            && self.rank_matches.unwrap_or(true)
            && self.apolarity.unwrap_or(true)
    }

    fn failed() -> Self {
        VerificationReport {
            single_extension: false,
            degree_matches: false,
            expansion_matches: false,
            lambdas_nonzero: false,
            pairwise_non_proportional: false,
            rank_matches: None,
            apolarity: None,
        }
    }
}

fn single_extension(f: &BinaryForm, dec: &Decomposition) -> bool {
    let mut rad: Option<&BigInt> = None;
    let scalars = f.coeffs().iter().chain(
        dec.terms
            .iter()
            .flat_map(|t| [&t.lambda, t.form.alpha(), t.form.beta()]),
    );
    for s in scalars {
        if s.is_rational() {
            continue;
        }
        match rad {
            None => rad = Some(s.radicand()),
            Some(r) if r == s.radicand() => {}
            Some(_) => return false,
        }
    }
    true
}

/// Checks `dec` against `f` by direct expansion, and optionally the
/// apolarity conditions on the product of its apolar operators.
pub fn verify(
    f: &BinaryForm,
    dec: &Decomposition,
    expected_rank: Option<usize>,
    check_apolarity: bool,
) -> VerificationReport {
    if !single_extension(f, dec) {
        return VerificationReport::failed();
    }
    let degree_matches = dec.degree == f.degree();
    let expansion_matches = degree_matches && &dec.expand() == f;
    let lambdas_nonzero = dec.terms.iter().all(|t| !t.lambda.is_zero());
    let pairwise_non_proportional = dec.terms.iter().enumerate().all(|(i, a)| {
        dec.terms[i + 1..]
            .iter()
            .all(|b| !proportional(&a.form, &b.form))
    });
    let rank_matches = expected_rank.map(|r| r == dec.terms.len());
    let apolarity = check_apolarity.then(|| {
        let ops: Vec<DiffOperator> = dec.terms.iter().map(|t| t.form.apolar_operator()).collect();
        let kills = apply(&operator_product(&ops), f).is_zero();
        kills
            && (0..ops.len()).all(|k| {
                let sub = operator_product(ops.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, o)| o));
                !apply(&sub, f).is_zero()
            })
    });
    VerificationReport {
        single_extension: true,
        degree_matches,
        expansion_matches,
        lambdas_nonzero,
        pairwise_non_proportional,
        rank_matches,
        apolarity,
    }
}
