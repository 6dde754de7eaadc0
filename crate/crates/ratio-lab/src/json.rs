//! JSON shapes. Integers inside lists are decimal strings and fractions are `"p/q"`
//! strings, so nothing is lost to 53-bit JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use ratio_lab_core::bounds::{Bound, BoundTable};
use ratio_lab_core::integrality::{Family, LandauRange, OracleVerdict};
use ratio_lab_core::liouville::{LiouvilleList, ProbeRow};
use ratio_lab_core::rational::{parse_pq, to_pq};
use ratio_lab_core::search::{Catalog, CatalogEntry, EntryIssue, VerifyReport};
use ratio_lab_core::separation::SeparationWitness;
use ratio_lab_core::{Error, ExactRational, Result, SignedList};

pub fn list_to_json(a: &SignedList) -> Vec<String> {
    a.elements().iter().map(|x| x.to_string()).collect()
}

pub fn list_from_json(xs: &[String]) -> Result<SignedList> {
    let raw = xs
        .iter()
        .map(|s| BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    SignedList::new(raw)
}

fn big(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub list: Vec<String>,
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub name: String,
    pub entries: Vec<EntryJson>,
    pub source: String,
}

impl From<&Catalog> for CatalogJson {
    fn from(c: &Catalog) -> Self {
        CatalogJson {
            name: c.name.clone(),
            entries: c
                .entries
                .iter()
                .map(|e| EntryJson { list: list_to_json(&e.list), norm: to_pq(&e.norm) })
                .collect(),
            source: c.source.clone(),
        }
    }
}

impl CatalogJson {
    /// Parses entries as stored, without checking norms; that is `verify_catalog`'s job.
    /// Entry order is kept so duplicates stay visible to verification.
    pub fn to_catalog(&self) -> Result<Catalog> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(CatalogEntry { list: list_from_json(&e.list)?, norm: parse_pq(&e.norm)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { name: self.name.clone(), entries, source: self.source.clone() })
    }
}

pub fn catalog_to_string(c: &Catalog) -> String {
    let mut s = serde_json::to_string_pretty(&CatalogJson::from(c)).expect("plain data");
    s.push('\n');
    s
}

pub fn catalog_from_str(s: &str) -> Result<Catalog> {
    let j: CatalogJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_catalog()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub k: String,
    #[serde(rename = "B")]
    pub b_coef: String,
    #[serde(rename = "C")]
    pub c_coef: String,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub b_indices: Vec<usize>,
}

impl From<&SeparationWitness> for WitnessJson {
    fn from(w: &SeparationWitness) -> Self {
        WitnessJson {
            k: w.k.to_string(),
            b_coef: w.b_coef.to_string(),
            c_coef: w.c_coef.to_string(),
            b: list_to_json(&w.b_part),
            c: list_to_json(&w.c_part),
            b_indices: w.b_indices.clone(),
        }
    }
}

impl WitnessJson {
    pub fn to_witness(&self) -> Result<SeparationWitness> {
        Ok(SeparationWitness {
            k: self.k.trim().parse().map_err(|_| Error::Parse(format!("bad k {:?}", self.k)))?,
            b_part: list_from_json(&self.b)?,
            c_part: list_from_json(&self.c)?,
            b_coef: big(&self.b_coef)?,
            c_coef: big(&self.c_coef)?,
            b_indices: self.b_indices.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormJson {
    pub list: Vec<String>,
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvoluteJson {
    pub list: Vec<String>,
    pub involute: Vec<String>,
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparateJson {
    pub list: Vec<String>,
    pub max_separation: u64,
    pub k: u64,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub n_max: u64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_p: Option<u64>,
}

impl OracleJson {
    pub fn new(n_max: u64, v: &OracleVerdict) -> Self {
        match *v {
            OracleVerdict::Pass => OracleJson { n_max, pass: true, failing_n: None, failing_p: None },
            OracleVerdict::Fail { n, p } => OracleJson { n_max, pass: false, failing_n: Some(n), failing_p: Some(p) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub integral: bool,
    #[serde(rename = "D")]
    pub d: i64,
    pub min_f: i64,
    pub max_f: i64,
    /// `sporadic`, the matching families, `none` when not integral, or
    /// `unclassified` for integral ratios with `D != 1`.
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

pub fn family_label(f: &Family) -> String {
    match f {
        Family::Binomial { a, b } => format!("binomial({a},{b})"),
        Family::Second { a, b } => format!("second({a},{b})"),
        Family::Third { a, b } => format!("third({a},{b})"),
    }
}

impl CheckJson {
    pub fn new(d: i64, range: &LandauRange, family: String) -> Self {
        CheckJson {
            integral: range.integral(),
            d,
            min_f: range.min,
            max_f: range.max,
            family,
            argmin: (!range.integral()).then(|| to_pq(&range.argmin)),
            oracle: None,
        }
    }
}

fn bound_str(b: &Bound) -> String {
    match b {
        Bound::Finite(v) => to_pq(v),
        Bound::Infinite => "inf".into(),
    }
}

fn parse_bound(s: &str) -> Result<Bound> {
    if s == "inf" {
        Ok(Bound::Infinite)
    } else {
        Ok(Bound::Finite(parse_pq(s)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub n_max: usize,
    pub r_max: usize,
    /// `gr[r][n]` for `0 <= r <= r_max`.
    pub gr: Vec<Vec<String>>,
    pub g: Vec<String>,
    /// `inf` below length 2.
    pub g1: Vec<String>,
}

impl From<&BoundTable> for BoundsJson {
    fn from(t: &BoundTable) -> Self {
        BoundsJson {
            n_max: t.n_max,
            r_max: t.r_max,
            gr: t.gr.iter().map(|row| row.iter().map(to_pq).collect()).collect(),
            g: t.g.iter().map(to_pq).collect(),
            g1: t.g1.iter().map(bound_str).collect(),
        }
    }
}

impl BoundsJson {
    pub fn g_values(&self) -> Result<Vec<ExactRational>> {
        self.g.iter().map(|s| parse_pq(s)).collect()
    }

    pub fn g1_values(&self) -> Result<Vec<Bound>> {
        self.g1.iter().map(|s| parse_bound(s)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiouvilleJson {
    #[serde(rename = "N")]
    pub n: String,
    pub divisors: String,
    pub list: Vec<String>,
    pub norm: String,
    pub formula: String,
}

impl LiouvilleJson {
    pub fn new(l: &LiouvilleList, norm: &ExactRational, formula: &ExactRational) -> Self {
        LiouvilleJson {
            n: l.n.to_string(),
            divisors: l.d_of_n.to_string(),
            list: list_to_json(&l.list),
            norm: to_pq(norm),
            formula: to_pq(formula),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRowJson {
    pub k: u64,
    pub exponents: Vec<(u64, u32)>,
    pub length: String,
    pub in_dyadic_range: bool,
    pub upper: String,
    pub lower: String,
    pub ratio: String,
}

impl From<&ProbeRow> for ProbeRowJson {
    fn from(r: &ProbeRow) -> Self {
        ProbeRowJson {
            k: r.k,
            exponents: r.factorization.clone(),
            length: r.n.to_string(),
            in_dyadic_range: r.length_in_dyadic_range(),
            upper: to_pq(&r.upper),
            lower: to_pq(&r.lower),
            ratio: to_pq(&r.ratio()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub name: String,
    pub reference: Option<String>,
    pub checked: usize,
    pub passed: bool,
    pub issues: Vec<String>,
    pub missing: Vec<Vec<String>>,
    pub extra: Vec<Vec<String>>,
}

pub fn issue_text(i: &EntryIssue) -> String {
    match i {
        EntryIssue::NormMismatch { list, stored, computed } => {
            format!("{list}: stored norm {} but computed {}", to_pq(stored), to_pq(computed))
        }
        EntryIssue::IntegrationMismatch { list, formula, integrated } => {
            format!("{list}: gcd formula {} but integration {}", to_pq(formula), to_pq(integrated))
        }
        EntryIssue::Duplicate { list } => format!("{list}: duplicate up to sign"),
        EntryIssue::NotIntegral { list, min_f } => format!("{list}: step function reaches {min_f}"),
        EntryIssue::ValuationFailure { list, n, p } => format!("{list}: valuation at p = {p} negative for n = {n}"),
    }
}

impl VerifyJson {
    pub fn new(name: &str, reference: Option<&str>, r: &VerifyReport) -> Self {
        VerifyJson {
            name: name.into(),
            reference: reference.map(Into::into),
            checked: r.checked,
            passed: r.passed(),
            issues: r.issues.iter().map(issue_text).collect(),
            missing: r.missing.iter().map(list_to_json).collect(),
            extra: r.extra.iter().map(list_to_json).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratio_lab_core::rational::ratio;

    #[test]
    fn list_strings() {
        let a = SignedList::from_i64(&[4, -2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&list_to_json(&a)).unwrap(), r#"["1","-2","4"]"#);
        assert_eq!(list_from_json(&list_to_json(&a)).unwrap(), a);
        assert!(list_from_json(&["1".into(), "x".into()]).is_err());
    }

    #[test]
    fn catalog_round_trip() {
        let l = SignedList::from_i64(&[2, 9, -1, -4, -6]).unwrap();
        let c = Catalog::new("t", "unit test", vec![(l, ratio(1, 4))]);
        let text = catalog_to_string(&c);
        assert!(text.contains(r#""norm": "1/4""#));
        assert_eq!(catalog_from_str(&text).unwrap(), c);
    }
}
