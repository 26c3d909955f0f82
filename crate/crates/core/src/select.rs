//! Relevance tiers from IPC results and the ontology and random planner
//! selection policies.

use std::cmp::Ordering;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kg::query::{self, TriplePattern};
use crate::kg::{plan_prop, prop, Graph, Iri, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relevance {
    Low,
    Medium,
    High,
}

impl Relevance {
    pub fn as_str(self) -> &'static str {
        match self {
            Relevance::Low => "low",
            Relevance::Medium => "medium",
            Relevance::High => "high",
        }
    }
}

impl fmt::Display for Relevance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relevance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "low" => Ok(Relevance::Low),
            "medium" => Ok(Relevance::Medium),
            "high" => Ok(Relevance::High),
            other => Err(format!("unknown relevance tier '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("no candidate planners")]
    NoCandidates,
    #[error("no performance data for domain {domain} among the candidates")]
    NoDataForDomain { domain: String },
    #[error("results file: {0}")]
    Csv(String),
}

/// One (planner, domain) row of competition results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannerRecord {
    pub planner: String,
    pub domain: String,
    pub solved: u64,
    pub total: u64,
}

impl PlannerRecord {
    pub fn new(planner: &str, domain: &str, solved: u64, total: u64) -> Self {
        PlannerRecord { planner: planner.to_string(), domain: domain.to_string(), solved, total }
    }

    pub fn check(&self) -> Result<(), SelectError> {
        if self.total == 0 || self.solved > self.total {
            return Err(SelectError::InvalidRecord(format!(
                "{}/{}: solved {} of {}",
                self.planner, self.domain, self.solved, self.total
            )));
        }
        if self.planner.trim().is_empty() || self.domain.trim().is_empty() {
            return Err(SelectError::InvalidRecord("empty planner or domain name".into()));
        }
        Ok(())
    }

    pub fn relevance(&self) -> Result<Relevance, SelectError> {
        relevance(self.solved, self.total)
    }
}

/// Tier of solved/total: below 35% low, 35% up to 70% medium, 70% and above
/// high. Both boundaries are inclusive on the upper tier and compared exactly.
pub fn relevance(solved: u64, total: u64) -> Result<Relevance, SelectError> {
    if total == 0 || solved > total {
        return Err(SelectError::InvalidRecord(format!("solved {solved} of {total}")));
    }
    let (s, t) = (solved as u128 * 100, total as u128);
    Ok(if s < 35 * t {
        Relevance::Low
    } else if s < 70 * t {
        Relevance::Medium
    } else {
        Relevance::High
    })
}

/// Reads `planner,domain,solved,total` rows.
pub fn read_ipc_csv<R: Read>(reader: R) -> Result<Vec<PlannerRecord>, SelectError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| SelectError::Csv(e.to_string()))?.clone();
    let expected = ["planner", "domain", "solved", "total"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(SelectError::Csv(format!(
            "expected header planner,domain,solved,total, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize::<PlannerRecord>() {
        let mut rec = row.map_err(|e| SelectError::Csv(e.to_string()))?;
        rec.planner = rec.planner.to_lowercase();
        rec.domain = rec.domain.to_lowercase();
        rec.check()?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    Ontology,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Rationale {
    Ontology { solved: u64, total: u64, tier: Relevance },
    Random { seed: u64, index: usize, of: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionOutcome {
    pub chosen: Iri,
    pub policy: Policy,
    pub rationale: Rationale,
}

impl fmt::Display for SelectionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.chosen.plan_local().unwrap_or(self.chosen.as_str());
        match &self.rationale {
            Rationale::Ontology { solved, total, tier } => {
                write!(f, "{name} (ontology: solved {solved}/{total}, relevance {tier})")
            }
            Rationale::Random { seed, index, of } => write!(f, "{name} (random: seed {seed}, pick {index} of {of})"),
        }
    }
}

/// Best recorded (solved, total) of `planner` on `domain`.
pub fn recorded_performance(g: &Graph, domain: &Iri, planner: &Iri) -> Option<(u64, u64)> {
    let pats = [
        TriplePattern::new(Term::var("perf"), plan_prop(prop::FOR_PLANNER), planner),
        TriplePattern::new(Term::var("perf"), plan_prop(prop::HAS_DOMAIN), domain),
        TriplePattern::new(Term::var("perf"), plan_prop(prop::HAS_SOLVED_COUNT), Term::var("s")),
        TriplePattern::new(Term::var("perf"), plan_prop(prop::HAS_PROBLEM_COUNT), Term::var("t")),
    ];
    query::evaluate(g, &pats)
        .iter()
        .filter_map(|b| {
            let s = u64::try_from(b["s"].as_integer()?).ok()?;
            let t = u64::try_from(b["t"].as_integer()?).ok()?;
            (t > 0 && s <= t).then_some((s, t))
        })
        .max_by(|a, b| ratio_cmp(*a, *b))
}

fn ratio_cmp((s1, t1): (u64, u64), (s2, t2): (u64, u64)) -> Ordering {
    (s1 as u128 * t2 as u128).cmp(&(s2 as u128 * t1 as u128))
}

/// Candidate with the highest recorded solved ratio on `domain`; ties go to
/// the lexicographically smaller IRI, unrecorded candidates rank last.
pub fn select_ontology(g: &Graph, domain: &Iri, candidates: &[Iri]) -> Result<SelectionOutcome, SelectError> {
    if candidates.is_empty() {
        return Err(SelectError::NoCandidates);
    }
    let mut best: Option<(&Iri, (u64, u64))> = None;
    for c in candidates {
        let Some(perf) = recorded_performance(g, domain, c) else {
            continue;
        };
        best = match best {
            None => Some((c, perf)),
            Some((b, bp)) => match ratio_cmp(perf, bp) {
                Ordering::Greater => Some((c, perf)),
                Ordering::Equal if c < b => Some((c, perf)),
                _ => Some((b, bp)),
            },
        };
    }
    let (chosen, (solved, total)) = best.ok_or_else(|| SelectError::NoDataForDomain {
        domain: domain.plan_local().unwrap_or(domain.as_str()).trim_start_matches("domain-").to_string(),
    })?;
    Ok(SelectionOutcome {
        chosen: chosen.clone(),
        policy: Policy::Ontology,
        rationale: Rationale::Ontology { solved, total, tier: relevance(solved, total)? },
    })
}

/// Uniform pick driven by ChaCha8 seeded with `seed`.
pub fn select_random(candidates: &[Iri], seed: u64) -> Result<SelectionOutcome, SelectError> {
    if candidates.is_empty() {
        return Err(SelectError::NoCandidates);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index = rng.gen_range(0..candidates.len());
    Ok(SelectionOutcome {
        chosen: candidates[index].clone(),
        policy: Policy::Random,
        rationale: Rationale::Random { seed, index, of: candidates.len() },
    })
}

/// Stream of uniform picks from one seeded generator, for repeated draws.
pub fn random_picks(candidates: usize, seed: u64) -> impl Iterator<Item = usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::from_fn(move || (candidates > 0).then(|| rng.gen_range(0..candidates)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers_at_boundaries() {
        assert_eq!(relevance(7, 20).unwrap(), Relevance::Medium);
        assert_eq!(relevance(14, 20).unwrap(), Relevance::High);
        assert_eq!(relevance(7, 10).unwrap(), Relevance::High);
        assert_eq!(relevance(34, 100).unwrap(), Relevance::Low);
        assert_eq!(relevance(0, 20).unwrap(), Relevance::Low);
        assert!(relevance(3, 2).is_err());
        assert!(relevance(0, 0).is_err());
    }

    #[test]
    fn csv_header_is_checked() {
        let ok = "planner,domain,solved,total\nA,Scanalyzer,20,20\n";
        let rows = read_ipc_csv(ok.as_bytes()).unwrap();
        assert_eq!(rows, vec![PlannerRecord::new("a", "scanalyzer", 20, 20)]);
        assert!(read_ipc_csv("p,d,s,t\n".as_bytes()).is_err());
        assert!(read_ipc_csv("planner,domain,solved,total\na,b,3,2\n".as_bytes()).is_err());
    }

    #[test]
    fn random_is_seeded() {
        let c: Vec<Iri> = ["a", "b", "c"].iter().map(|n| Iri::plan(n)).collect();
        assert_eq!(select_random(&c, 42).unwrap(), select_random(&c, 42).unwrap());
        assert_eq!(select_random(&c[..1], 9).unwrap().chosen, c[0]);
        assert_eq!(select_random(&[], 1), Err(SelectError::NoCandidates));
    }
}
