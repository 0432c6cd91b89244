//! JSON wire format for exact values.
//!
//! ```json
//! {"re": "p/q", "im": "r/s"}                      // GaussianRational
//! {"num": [<gauss>...], "den": [<gauss>...]}       // EpsRational, ascending powers of ε
//! {"trunc": K, "terms": [{"k": k, "coeff": <eps>}]} // MSeries, coefficient of M^-k
//! ```

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GaussianRational, Poly, RatFunc, Rational, Series};
use crate::error::{Error, Result};
use crate::{EpsPolynomial, EpsRational, MSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussJson {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsJson {
    pub num: Vec<GaussJson>,
    pub den: Vec<GaussJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: i64,
    pub coeff: EpsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub trunc: i64,
    pub terms: Vec<TermJson>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

impl From<&GaussianRational> for GaussJson {
    fn from(z: &GaussianRational) -> Self {
        GaussJson {
            re: z.re.to_string(),
            im: z.im.to_string(),
        }
    }
}

impl TryFrom<&GaussJson> for GaussianRational {
    type Error = Error;
    fn try_from(j: &GaussJson) -> Result<Self> {
        Ok(GaussianRational::new(parse_rational(&j.re)?, parse_rational(&j.im)?))
    }
}

fn poly_json(p: &EpsPolynomial) -> Vec<GaussJson> {
    p.coeffs().iter().map(GaussJson::from).collect()
}

fn poly_from_json(v: &[GaussJson]) -> Result<EpsPolynomial> {
    Ok(Poly::new(
        v.iter().map(GaussianRational::try_from).collect::<Result<_>>()?,
    ))
}

impl From<&EpsRational> for EpsJson {
    fn from(r: &EpsRational) -> Self {
        EpsJson {
            num: poly_json(r.num()),
            den: poly_json(r.den()),
        }
    }
}

impl TryFrom<&EpsJson> for EpsRational {
    type Error = Error;
    fn try_from(j: &EpsJson) -> Result<Self> {
        RatFunc::reduce(poly_from_json(&j.num)?, poly_from_json(&j.den)?)
    }
}

impl From<&MSeries> for SeriesJson {
    fn from(s: &MSeries) -> Self {
        SeriesJson {
            trunc: s.trunc(),
            terms: s
                .terms()
                .iter()
                .map(|(&k, c)| TermJson {
                    k,
                    coeff: c.into(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for MSeries {
    type Error = Error;
    fn try_from(j: &SeriesJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.k, EpsRational::try_from(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::new(terms, j.trunc))
    }
}

pub fn series_to_json(s: &MSeries) -> serde_json::Value {
    serde_json::to_value(SeriesJson::from(s)).expect("plain data serialises")
}

pub fn series_from_json(v: &serde_json::Value) -> Result<MSeries> {
    let j: SeriesJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    MSeries::try_from(&j)
}
