//! Solving `t(y) = 1` for regular terms by cancelling residues one
//! valuation at a time, plus seeded probes for uniqueness and monotonicity.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compgroup::{Orientation, Parabolic, GA_ORIENTATION};
use crate::error::{EvalError, SolveError};
use crate::group::{Reversed, ValuedElement};
use crate::sampling;
use crate::series::{fmt_coefficient, Coefficient, TruncatedSeries};
use crate::terms::{eval, pow_int, SymbolTable, Term};

/// Outcome of the residue analysis of `t(f)`.
#[derive(Clone, Debug, PartialEq)]
pub enum TermResidue<R> {
    /// `res(t(f)) = alpha(t) res(f)`.
    Regular(R),
    /// `alpha(t) = 0`: `t(f)` is strictly dominated by `f`.
    Smaller,
}

/// Residue of `t(f)` predicted from `alpha(t)` and `res(f)`. Requires
/// `t(1) = 1` and `f ≠ 1`.
pub fn residue_of_term<G: ValuedElement>(
    t: &Term,
    f: &G,
    tab: &SymbolTable<G>,
) -> Result<TermResidue<G::Residue>, SolveError> {
    if !eval(t, &f.identity_like(), tab)?.is_identity() {
        return Err(SolveError::NotNormalized);
    }
    let Some(r) = f.residue() else {
        return Err(SolveError::TrivialArgument);
    };
    let alpha = t.alpha();
    if alpha.is_zero() {
        Ok(TermResidue::Smaller)
    } else {
        Ok(TermResidue::Regular(G::scale_residue(&r, &alpha)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveStep<R> {
    pub rho: u32,
    pub correction: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveTrace<G: ValuedElement> {
    pub steps: Vec<SolveStep<G::Residue>>,
    pub iterations: usize,
    pub solution: G,
}

impl<G: ValuedElement> SolveTrace<G> {
    /// `[[rho, "correction"], ...]`
    pub fn trace_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| json!([s.rho, G::residue_text(&s.correction)]))
                .collect(),
        )
    }
}

/// Finds the unique `f` with `t(f) = 1`: starting from the identity,
/// each step right-multiplies by the canonical element whose residue is
/// `-res(t(f)) / alpha`. `proto` fixes the ambient group (order, algebra).
pub fn solve_regular<G: ValuedElement>(
    t: &Term,
    tab: &SymbolTable<G>,
    proto: &G,
) -> Result<SolveTrace<G>, SolveError> {
    let alpha = t.alpha();
    if alpha.is_zero() {
        return Err(SolveError::Singular);
    }
    let scale = -Coefficient::one() / &alpha;
    let bound = proto.cancellation_bound();
    let mut f = proto.identity_like();
    let mut steps: Vec<SolveStep<G::Residue>> = Vec::new();
    loop {
        let u = eval(t, &f, tab)?;
        let Some(r) = u.residue() else { break };
        if steps.len() == bound {
            return Err(SolveError::IterationBound(bound));
        }
        let rho = G::residue_rank(&r);
        if let Some(prev) = steps.last() {
            if rho <= prev.rho {
                return Err(SolveError::NotPseudoCauchy(prev.rho, rho));
            }
        }
        let correction = G::scale_residue(&r, &scale);
        f = f.op(&proto.lift_residue(&correction));
        steps.push(SolveStep { rho, correction });
    }
    Ok(SolveTrace {
        iterations: steps.len(),
        steps,
        solution: f,
    })
}

/// [`solve_regular`] in the composition group at the given order.
pub fn solve_parabolic(
    t: &Term,
    tab: &SymbolTable<Parabolic>,
    order: u32,
) -> Result<SolveTrace<Parabolic>, SolveError> {
    solve_regular(t, tab, &Parabolic::identity(order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub trials: usize,
    pub seed: u64,
    /// Perturbed elements that also solve the equation.
    pub violations: Vec<Parabolic>,
}

impl UniquenessReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::of(self.violations.is_empty())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict(),
            "trials": self.trials,
            "seed": self.seed,
            "counterexamples": self.violations.iter().map(Parabolic::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Perturbs `solution` at one random coefficient per trial and checks that
/// the perturbed element is not a solution.
pub fn uniqueness_probe(
    t: &Term,
    tab: &SymbolTable<Parabolic>,
    solution: &Parabolic,
    trials: usize,
    seed: u64,
) -> Result<UniquenessReport, SolveError> {
    if t.alpha().is_zero() {
        return Err(SolveError::Singular);
    }
    let order = solution.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let k = rng.gen_range(2..=order.max(2));
        let c = sampling::nonzero_rational(&mut rng, 5, 3);
        let h = Parabolic::from_deviation(
            &(&solution.deviation() + &TruncatedSeries::monomial(c, k, order)),
        );
        if eval(t, &h, tab)?.is_identity() {
            violations.push(h);
        }
    }
    Ok(UniquenessReport {
        trials,
        seed,
        violations,
    })
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub samples: usize,
    pub seed: u64,
    pub alpha: Coefficient,
    pub orientation: Orientation,
    /// Pairs `f < g` whose images are not ordered by `sign(alpha)`.
    pub violations: Vec<(Parabolic, Parabolic)>,
    /// Number of sampled `f` on which `t(f) ≥ 1 ⟺ f^alpha ≥ 1` was checked
    /// (only for terms with `t(1) = 1`).
    pub sign_checks: usize,
    pub sign_violations: Vec<Parabolic>,
}

impl MonotonicityReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::of(self.violations.is_empty() && self.sign_violations.is_empty())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict(),
            "samples": self.samples,
            "seed": self.seed,
            "alpha": fmt_coefficient(&self.alpha),
            "orientation": self.orientation.name(),
            "counterexamples": self.violations.iter()
                .map(|(f, g)| json!([f.to_json(), g.to_json()]))
                .collect::<Vec<_>>(),
            "sign_checks": self.sign_checks,
            "sign_counterexamples": self.sign_violations.iter().map(Parabolic::to_json).collect::<Vec<_>>(),
        })
    }
}

fn eval_oriented(
    t: &Term,
    f: &Parabolic,
    tab: &SymbolTable<Parabolic>,
    orientation: Orientation,
) -> Result<Parabolic, EvalError> {
    match orientation {
        Orientation::Direct => eval(t, f, tab),
        Orientation::Inverse => {
            let rtab = tab.map(|g| Reversed(g.clone()));
            Ok(eval(t, &Reversed(f.clone()), &rtab)?.0)
        }
    }
}

/// Samples ordered pairs `f < g` and checks that `f ↦ t(f)` is strictly
/// increasing for `alpha(t) > 0` and strictly decreasing for `alpha(t) < 0`.
/// Terms are evaluated in the calibrated ordered group
/// ([`GA_ORIENTATION`]). Requires integer exponents.
pub fn monotonicity_probe(
    t: &Term,
    tab: &SymbolTable<Parabolic>,
    order: u32,
    samples: usize,
    seed: u64,
) -> Result<MonotonicityReport, SolveError> {
    if !t.has_integer_exponents() {
        return Err(SolveError::NonIntegerTerm);
    }
    let alpha = t.alpha();
    if alpha.is_zero() {
        return Err(SolveError::Singular);
    }
    let orientation = GA_ORIENTATION;
    let expected = if alpha.is_positive() {
        Ordering::Less
    } else {
        Ordering::Greater
    };
    let id = Parabolic::identity(order);
    let normalized = eval_oriented(t, &id, tab, orientation)?.is_identity();
    let alpha_int: i64 = i64::try_from(alpha.numer()).map_err(|_| SolveError::NonIntegerTerm)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MonotonicityReport {
        samples,
        seed,
        alpha: alpha.clone(),
        orientation,
        violations: Vec::new(),
        sign_checks: 0,
        sign_violations: Vec::new(),
    };
    let mut done = 0;
    while done < samples {
        let a = sampling::parabolic(&mut rng, order, 4);
        let b = sampling::parabolic(&mut rng, order, 4);
        let (f, g) = match a.compare(&b) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => continue,
        };
        done += 1;
        let tf = eval_oriented(t, &f, tab, orientation)?;
        let tg = eval_oriented(t, &g, tab, orientation)?;
        if tf.compare(&tg) != expected {
            report.violations.push((f.clone(), g));
        }
        if normalized {
            report.sign_checks += 1;
            let lhs = tf.compare(&id) != Ordering::Less;
            let rhs = pow_int(&f, alpha_int).compare(&id) != Ordering::Less;
            if lhs != rhs {
                report.sign_violations.push(f);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compgroup::Residue;
    use crate::series::rat;
    use crate::terms::parse_term;

    fn p(text: &str, order: u32) -> Parabolic {
        Parabolic::parse(text, order).unwrap()
    }

    fn table(entries: &[(&str, &str)], order: u32) -> SymbolTable<Parabolic> {
        let mut tab = SymbolTable::new();
        for (n, v) in entries {
            tab.bind(n, p(v, order)).unwrap();
        }
        tab
    }

    #[test]
    fn residue_of_square() {
        let tab = SymbolTable::new();
        let r = residue_of_term(&parse_term("y^2").unwrap(), &p("t + 3 t^4", 10), &tab).unwrap();
        assert_eq!(r, TermResidue::Regular(Residue::new(4, rat(6, 1))));
        let r = residue_of_term(&parse_term("y * inv(y)").unwrap(), &p("t + t^2", 10), &tab);
        assert_eq!(r.unwrap(), TermResidue::Smaller);
    }

    #[test]
    fn residue_preconditions() {
        let tab = table(&[("g", "t + t^2")], 10);
        let t = parse_term("g * y").unwrap();
        assert_eq!(
            residue_of_term(&t, &p("t + t^3", 10), &tab),
            Err(SolveError::NotNormalized)
        );
        assert_eq!(
            residue_of_term(&parse_term("y").unwrap(), &Parabolic::identity(10), &tab),
            Err(SolveError::TrivialArgument)
        );
    }

    #[test]
    fn commutator_term_drops_valuation() {
        let tab = table(&[("g", "t + 2 t^2 - t^3")], 10);
        let t = parse_term("g * y * inv(g) * inv(y)").unwrap();
        let f = p("t + t^3 + 4 t^5", 10);
        assert_eq!(residue_of_term(&t, &f, &tab).unwrap(), TermResidue::Smaller);
        assert!(eval(&t, &f, &tab).unwrap().val().exponent().unwrap() > 3);
    }

    #[test]
    fn one_step_solution() {
        let tab = table(&[("g", "t + t^2 - 3 t^5")], 10);
        let trace = solve_parabolic(&parse_term("y * inv(g)").unwrap(), &tab, 10).unwrap();
        assert_eq!(trace.solution, p("t + t^2 - 3 t^5", 10));
        assert!(trace.iterations <= 9);
    }

    #[test]
    fn square_root_instance() {
        let tab = table(&[("g", "t + t^2")], 12);
        let trace = solve_parabolic(&parse_term("y^2 * inv(g)").unwrap(), &tab, 12).unwrap();
        let s = &trace.solution;
        assert_eq!(s.series().coeff(2), rat(1, 2));
        assert_eq!(s.series().coeff(3), rat(-1, 4));
        assert_eq!(s.compose(s), p("t + t^2", 12));
        assert_eq!(*s, p("t + t^2", 12).nth_root(2).unwrap());
        assert_eq!(trace.steps[0].rho, 2);
        assert!(trace.steps.windows(2).all(|w| w[0].rho < w[1].rho));
        assert_eq!(trace.trace_json()[0], json!([2, "1/2"]));
    }

    #[test]
    fn trivial_equation() {
        let tab = SymbolTable::new();
        let trace = solve_parabolic(&parse_term("y * y").unwrap(), &tab, 8).unwrap();
        assert!(trace.solution.is_identity());
        assert_eq!(trace.iterations, 0);
    }

    #[test]
    fn singular_rejected() {
        let tab = table(&[("g", "t + t^2")], 8);
        assert_eq!(
            solve_parabolic(&parse_term("g * y * inv(y)").unwrap(), &tab, 8).unwrap_err(),
            SolveError::Singular
        );
    }

    #[test]
    fn probes_on_square_root() {
        let tab = table(&[("g", "t + t^2")], 10);
        let t = parse_term("y^2 * inv(g)").unwrap();
        let sol = solve_parabolic(&t, &tab, 10).unwrap().solution;
        let u = uniqueness_probe(&t, &tab, &sol, 30, 1).unwrap();
        assert_eq!(u.verdict(), Verdict::Pass);
        let m = monotonicity_probe(&t, &tab, 10, 30, 1).unwrap();
        assert_eq!(m.verdict(), Verdict::Pass);
        let m = monotonicity_probe(&parse_term("g * inv(y)").unwrap(), &tab, 10, 30, 2).unwrap();
        assert_eq!(m.verdict(), Verdict::Pass);
        assert_eq!(
            monotonicity_probe(&parse_term("y^(1/2)").unwrap(), &tab, 10, 5, 0).unwrap_err(),
            SolveError::NonIntegerTerm
        );
    }
}
