//! Named sets of lists with their norms, and their re-verification.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{normalize_sign, Hit};
use crate::integrality::{landau_min_max, valuation_oracle, OracleVerdict, RatioSpec};
use crate::list::{SignedList, INTEGRATION_LIMIT};
use crate::rational::{ratio, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub list: SignedList,
    pub norm: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub name: String,
    pub entries: Vec<CatalogEntry>,
    pub source: String,
}

impl Catalog {
    /// Sorts by list; later duplicates are dropped.
    pub fn new(name: &str, source: &str, hits: Vec<Hit>) -> Catalog {
        let mut seen = BTreeSet::new();
        let mut entries: Vec<CatalogEntry> = Vec::new();
        let mut hits = hits;
        hits.sort_by(|a, b| a.0.cmp(&b.0));
        for (list, norm) in hits {
            if seen.insert(list.clone()) {
                entries.push(CatalogEntry { list, norm });
            }
        }
        Catalog { name: name.into(), entries, source: source.into() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lists(&self) -> Vec<SignedList> {
        self.entries.iter().map(|e| e.list.clone()).collect()
    }

    /// Lists with `a` and `-a` identified.
    pub fn sign_classes(&self) -> BTreeSet<SignedList> {
        self.entries.iter().map(|e| normalize_sign(&e.list)).collect()
    }

    pub fn min_norm(&self) -> Option<ExactRational> {
        self.entries.iter().map(|e| e.norm.clone()).min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryIssue {
    /// The stored norm differs from the gcd formula.
    NormMismatch { list: SignedList, stored: ExactRational, computed: ExactRational },
    /// The gcd formula and direct integration disagree.
    IntegrationMismatch { list: SignedList, formula: ExactRational, integrated: ExactRational },
    /// Listed twice up to sign.
    Duplicate { list: SignedList },
    /// A norm-1/4 sum-zero entry whose step function goes negative.
    NotIntegral { list: SignedList, min_f: i64 },
    /// A norm-1/4 sum-zero entry failing the valuation check.
    ValuationFailure { list: SignedList, n: u64, p: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub issues: Vec<EntryIssue>,
    /// In the reference catalog but not in the checked one.
    pub missing: Vec<SignedList>,
    /// In the checked catalog but not in the reference.
    pub extra: Vec<SignedList>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty() && self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Recomputes every norm two ways, checks integrality of norm-1/4 sum-zero entries
/// (valuations up to `oracle_n_max`, skipped when 0), and compares with `reference`
/// up to sign.
pub fn verify_catalog(c: &Catalog, reference: Option<&Catalog>, oracle_n_max: u64) -> VerifyReport {
    let mut report = VerifyReport { checked: c.entries.len(), ..Default::default() };
    let mut classes = BTreeSet::new();
    let quarter = ratio(1, 4);
    for e in &c.entries {
        let list = &e.list;
        if !classes.insert(normalize_sign(list)) {
            report.issues.push(EntryIssue::Duplicate { list: list.clone() });
        }
        let computed = match list.norm_opt(true) {
            Ok(n) => n,
            Err(_) => continue,
        };
        if computed != e.norm {
            report.issues.push(EntryIssue::NormMismatch {
                list: list.clone(),
                stored: e.norm.clone(),
                computed: computed.clone(),
            });
        }
        let small = list.to_i64().is_some_and(|xs| xs.iter().map(|x| x.unsigned_abs()).sum::<u64>() <= INTEGRATION_LIMIT);
        if small && !list.is_empty() {
            if let Ok(integrated) = list.norm_by_integration() {
                if integrated != computed {
                    report.issues.push(EntryIssue::IntegrationMismatch {
                        list: list.clone(),
                        formula: computed.clone(),
                        integrated,
                    });
                }
            }
        }
        if list.len() % 2 == 1 && list.sum().is_zero() && computed == quarter {
            if let Ok(spec) = RatioSpec::from_list(&normalize_sign(list)) {
                let range = landau_min_max(&spec);
                if range.min < 0 {
                    report.issues.push(EntryIssue::NotIntegral { list: list.clone(), min_f: range.min });
                }
                if oracle_n_max > 0 {
                    if let Ok(OracleVerdict::Fail { n, p }) = valuation_oracle(&spec, oracle_n_max, None) {
                        report.issues.push(EntryIssue::ValuationFailure { list: list.clone(), n, p });
                    }
                }
            }
        }
    }
    if let Some(r) = reference {
        let theirs = r.sign_classes();
        report.missing = theirs.difference(&classes).cloned().collect();
        report.extra = classes.difference(&theirs).cloned().collect();
    }
    report
}
