use rayon::prelude::*;

use super::report::VerificationReport;
use super::Statement;
use crate::catalog::corpus;
use crate::error::{GroupError, Result};
use crate::group::is_prime;
use crate::limits::Limits;

/// Reports from a sweep, in task order, with aggregate counts.
#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub reports: Vec<VerificationReport>,
    pub failures: usize,
    pub vacuous: usize,
    pub holding: usize,
}

impl SweepSummary {
    fn new(reports: Vec<VerificationReport>) -> Self {
        let failures = reports.iter().filter(|r| r.failed()).count();
        let vacuous = reports.iter().filter(|r| r.holds && r.vacuous).count();
        SweepSummary {
            holding: reports.len() - failures - vacuous,
            reports,
            failures,
            vacuous,
        }
    }
}

/// Run every statement on every corpus group, once per applicable prime.
/// Statements needing an odd prime skip `p = 2`. Tasks run in parallel;
/// the report order follows (group, statement, prime) as given.
pub fn sweep(corpus_spec: &str, statements: &[Statement], primes: &[u64], limits: &Limits) -> Result<SweepSummary> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(GroupError::NotPrime(p));
    }
    if statements.contains(&Statement::Examples) {
        return Err(GroupError::Parse(
            "examples is not a per-group statement; use the repro command".into(),
        ));
    }
    let groups = corpus(corpus_spec, limits)?;
    let mut tasks = Vec::new();
    for (gi, _) in groups.iter().enumerate() {
        for &st in statements {
            if st.takes_prime() {
                for &p in primes {
                    if !(st.needs_odd_prime() && p == 2) {
                        tasks.push((gi, st, Some(p)));
                    }
                }
            } else {
                tasks.push((gi, st, None));
            }
        }
    }
    let reports = tasks
        .par_iter()
        .map(|&(gi, st, p)| {
            let (name, g) = &groups[gi];
            st.run(name, g, p, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSummary::new(reports.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_th3_sweep() {
        let s = sweep("subgroups-of:S4", &[Statement::Th3], &[2, 3], &Limits::default()).unwrap();
        assert_eq!(s.reports.len(), 22);
        assert_eq!(s.failures, 0);
        assert!(s.holding > 0);
    }

    #[test]
    fn rejects_bad_input() {
        let l = Limits::default();
        assert!(sweep("subgroups-of:S4", &[Statement::Th3], &[4], &l).is_err());
        assert!(sweep("subgroups-of:S4", &[Statement::Examples], &[2], &l).is_err());
        assert!(sweep("nonsense", &[Statement::Th3], &[2], &l).is_err());
    }

    #[test]
    fn odd_prime_statements_skip_two() {
        let s = sweep("catalog:S4", &[Statement::Th2, Statement::Th1], &[2, 3], &Limits::default()).unwrap();
        let ids: Vec<(&str, Option<u64>)> = s.reports.iter().map(|r| (r.statement_id.as_str(), r.prime)).collect();
        assert_eq!(ids, vec![("th2", Some(3)), ("th1", None)]);
    }
}
