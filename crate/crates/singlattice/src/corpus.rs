//! Bundled example graphs with frozen expected invariants. Every expectation
//! is an exact integer reproduced by the library; `run_corpus` re-checks all
//! of them.

use num_bigint::BigInt;
use num_traits::One;

use crate::bounds::lambda_exact;
use crate::error::{Error, Result};
use crate::lattice::genus_invariants;
use crate::parse::parse_document;

#[derive(Debug, Clone)]
pub struct Expectation {
    pub quantity: &'static str,
    pub expected: BigInt,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: String,
    pub expectations: Vec<Expectation>,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub quantity: &'static str,
    pub expected: BigInt,
    pub actual: BigInt,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

fn exp(quantity: &'static str, expected: i64) -> Expectation {
    Expectation {
        quantity,
        expected: BigInt::from(expected),
    }
}

fn chain_source(p: i64, m: usize) -> String {
    // chain: one genus-p curve followed by m-1 rational (-2)-curves
    let mut s = format!("graph KYC_p{}_m{}\nv E1 sq=-1 g={}\n", p, m, p);
    for i in 2..=m {
        s += &format!("v E{} sq=-2\n", i);
    }
    for i in 1..m {
        s += &format!("e E{} E{}\n", i, i + 1);
    }
    s
}

/// All bundled entries in declaration order.
pub fn corpus_entries() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();

    entries.push(CorpusEntry {
        name: "A1".into(),
        source: "graph A1\nv E sq=-2\ncycle z E=1\n".into(),
        expectations: vec![exp("p_f", 0), exp("p_a", 0), exp("lambda_plus_two", 1)],
    });

    // single smooth curve of degree d: genus (d-1)(d-2)/2, self-intersection -d
    for d in 3i64..=8 {
        let g = (d - 1) * (d - 2) / 2;
        let u = d / 2 - 1;
        let pa = 1 + d * u * (d - u - 2) / 2;
        entries.push(CorpusEntry {
            name: format!("HY{}", d),
            source: format!("graph HY{d}\nv C sq=-{d} g={g}\ncycle z C=1\n"),
            expectations: vec![
                exp("p_f", g),
                exp("p_a", pa),
                exp("lambda_plus_two", (d - 1).max(1)),
            ],
        });
    }

    for p in 1i64..=3 {
        for m in 1usize..=3 {
            entries.push(CorpusEntry {
                name: format!("KYC_p{}_m{}", p, m),
                source: chain_source(p, m),
                expectations: vec![exp("p_f", p), exp("p_a", m as i64 * p * (p - 1) / 2 + 1)],
            });
        }
    }

    entries.push(CorpusEntry {
        name: "FIG2".into(),
        source: "graph FIG2\n# x^3 + y^4 + z^6 = 0\nv F0 sq=-2 g=1\nv F1 sq=-2\nv F2 sq=-2\n\
                 v F3 sq=-2\ne F0 F1\ne F0 F2\ne F0 F3\ncycle z F0=2 F1=1 F2=1 F3=1\n"
            .into(),
        expectations: vec![exp("p_f", 2), exp("p_a", 2), exp("lambda_plus_two", 3)],
    });

    entries.push(CorpusEntry {
        name: "TOM".into(),
        source: "graph TOM\n# z^2 = y(x^4 + y^6)\nv E1 sq=-2\nv E2 sq=-3\nv E3 sq=-1 g=1\n\
                 v E4 sq=-1 g=1\ne E1 E2\ne E2 E3\ne E2 E4\n"
            .into(),
        // p_a fixed by the enumeration search at first build; kept as a
        // regression constant (derived, not externally stated)
        expectations: vec![exp("p_f", 2), exp("p_a", 3)],
    });

    entries.push(CorpusEntry {
        name: "STAR-AC".into(),
        source: "graph STAR_AC\nv C sq=-2 g=2\nv E1 sq=-2\ne C E1\ncycle z C=1 E1=2\n".into(),
        expectations: vec![exp("p_f", 2), exp("p_a", 2)],
    });

    entries
}

/// Computes the named quantity on the entry's graph.
fn quantity_value(entry: &CorpusEntry, quantity: &str) -> Result<BigInt> {
    let doc = parse_document(&entry.source)?;
    match quantity {
        "p_f" => Ok(genus_invariants(&doc.graph)?.p_f),
        "p_a" => Ok(genus_invariants(&doc.graph)?.p_a),
        "lambda_plus_two" => {
            let z = doc.cycles.get("z").ok_or_else(|| {
                Error::Precondition(format!("entry {} declares no cycle z", entry.name))
            })?;
            let lam = lambda_exact(&doc.graph, z)?;
            Ok((lam.value + BigInt::from(2)).max(BigInt::one()))
        }
        other => Err(Error::Precondition(format!("unknown quantity {other:?}"))),
    }
}

pub fn check_entry(entry: &CorpusEntry) -> Result<EntryReport> {
    let mut checks = Vec::new();
    for e in &entry.expectations {
        let actual = quantity_value(entry, e.quantity)?;
        checks.push(CheckResult {
            quantity: e.quantity,
            expected: e.expected.clone(),
            pass: actual == e.expected,
            actual,
        });
    }
    Ok(EntryReport {
        name: entry.name.clone(),
        checks,
    })
}

/// Runs every bundled entry; the flag is true iff all expectations hold.
pub fn run_corpus() -> Result<(Vec<EntryReport>, bool)> {
    let mut reports = Vec::new();
    let mut all_pass = true;
    for entry in corpus_entries() {
        let report = check_entry(&entry)?;
        all_pass &= report.checks.iter().all(|c| c.pass);
        reports.push(report);
    }
    Ok((reports, all_pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        let (reports, all_pass) = run_corpus().unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            for c in &r.checks {
                assert!(
                    c.pass,
                    "{}: {} expected {}, got {}",
                    r.name, c.quantity, c.expected, c.actual
                );
            }
        }
        assert!(all_pass);
    }

    #[test]
    fn entry_names_unique_and_parseable() {
        let entries = corpus_entries();
        let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), entries.len());
        for e in &entries {
            let doc = parse_document(&e.source).unwrap();
            assert!(doc.graph.validate().is_ok(), "{} invalid", e.name);
        }
    }
}
