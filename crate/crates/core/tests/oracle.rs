use tvec_core::diagnostic::{Diagnostic, DiagnosticKind};
use tvec_core::erase::erase;
use tvec_core::oracle::{
    annotation_types, enumerate, nat_motives, open_context, run_property_suite, vec_motives, SuiteConfig,
};
use tvec_core::syntax::{AnnKind, AnnTerm, Context, Mode, Ty};
use tvec_core::typecheck::{CheckResult, Checker, Typer};

/// Counts terms of each exact size directly from the grammar, without
/// building any of them. Mirrors the size metric documented on the
/// enumerator but shares no code with it.
fn naive_counts(max: usize, mode: Mode, ctx_vars: usize) -> Vec<u64> {
    let ext = mode == Mode::LargeElim;
    let annot: Vec<usize> = annotation_types(mode).iter().map(Ty::size).collect();
    let nat_m: Vec<usize> = nat_motives(mode).iter().map(Ty::size).collect();
    let vec_m: Vec<usize> = vec_motives().iter().map(Ty::size).collect();
    // count[depth][size]
    let depths = max + 1;
    let mut count = vec![vec![0u64; max + 1]; depths + 1];
    for size in 1..=max {
        for depth in (0..depths).rev() {
            let c = |d: usize, s: usize, count: &Vec<Vec<u64>>| if s == 0 || s > max { 0 } else { count[d][s] };
            let pairs = |total: usize, count: &Vec<Vec<u64>>| -> u64 {
                (1..total).map(|l| c(depth, l, count) * c(depth, total - l, count)).sum()
            };
            let triples = |total: usize, count: &Vec<Vec<u64>>| -> u64 {
                (1..total).map(|l| c(depth, l, count) * pairs(total - l, count)).sum()
            };
            let mut n = 0;
            if size == 1 {
                n += (ctx_vars + depth + 1) as u64;
            }
            let rest = size - 1;
            n += annot.iter().filter(|&&a| a == rest).count() as u64;
            let unary = if ext { 2 } else { 1 };
            n += unary * c(depth, rest, &count);
            let binary = if ext { 5 } else { 4 };
            n += binary * pairs(rest, &count);
            for &a in &annot {
                if rest > a {
                    let body = rest - a;
                    n += 2 * c(depth + 1, body, &count);
                    if ext {
                        n += c(depth, body, &count) + pairs(body, &count);
                    }
                }
            }
            for &m in &nat_m {
                if rest >= m {
                    n += triples(rest - m, &count) + pairs(rest - m, &count);
                }
            }
            for &m in &vec_m {
                if rest >= m {
                    n += triples(rest - m, &count);
                }
            }
            count[depth][size] = n;
        }
    }
    (1..=max).map(|s| count[0][s]).collect()
}

#[test]
fn enumeration_matches_an_independent_count() {
    for mode in [Mode::Base, Mode::LargeElim] {
        for (ctx, vars) in [(Context::new(), 0), (open_context(), 3)] {
            let terms = enumerate(5, mode, &ctx).unwrap();
            let mut by_size = vec![0u64; 5];
            for t in &terms {
                by_size[t.size() - 1] += 1;
            }
            assert_eq!(by_size, naive_counts(5, mode, vars), "{mode} with {vars} context variables");
        }
    }
}

#[test]
fn enumeration_is_duplicate_free_up_to_alpha() {
    let terms = enumerate(4, Mode::LargeElim, &open_context()).unwrap();
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            assert!(!a.alpha_eq(b), "{a:?}");
        }
    }
}

#[test]
fn golden_count_of_small_closed_well_typed_terms() {
    let count = |mode| {
        let checker = Checker::new(mode);
        enumerate(4, mode, &Context::new())
            .unwrap()
            .iter()
            .filter(|t| checker.infer(&Context::new(), t).is_ok())
            .count()
    };
    assert_eq!(count(Mode::Base), GOLDEN_BASE);
    assert_eq!(count(Mode::LargeElim), GOLDEN_LARGE_ELIM);
}

const GOLDEN_BASE: usize = 18;
const GOLDEN_LARGE_ELIM: usize = 23;

#[test]
fn suite_passes_in_both_modes() {
    for mode in [Mode::Base, Mode::LargeElim] {
        let report =
            run_property_suite(&SuiteConfig { max_size: 5, ..Default::default() }, &Checker::new(mode)).unwrap();
        assert_eq!(report.failures(), 0, "{:#?}", report.properties);
        assert_eq!(report.undecided(), 0);
        assert!(report.well_typed_closed > 0);
    }
}

/// Accepts any `join` whose sides are typable, without comparing them.
struct SkipsJoinPremise(Checker);

impl Typer for SkipsJoinPremise {
    fn mode(&self) -> Mode {
        self.0.mode
    }

    fn fuel(&self) -> u64 {
        self.0.fuel
    }

    fn infer(&self, ctx: &Context, t: &AnnTerm) -> CheckResult {
        match &t.kind {
            AnnKind::Join(a, b) => {
                self.0.infer(ctx, a)?;
                self.0.infer(ctx, b)?;
                Ok(Ty::Eq(erase(a), erase(b)))
            }
            _ => self.0.infer(ctx, t),
        }
    }
}

#[test]
fn suite_detects_a_checker_that_skips_the_join_premise() {
    let bad = SkipsJoinPremise(Checker::new(Mode::Base));
    let report = run_property_suite(&SuiteConfig { max_size: 4, ..Default::default() }, &bad).unwrap();
    let p1 = &report.properties[0];
    assert!(p1.failed > 0);
    assert!(p1.counterexamples.iter().any(|c| c.starts_with("join 0 1")), "{:?}", p1.counterexamples);
}

#[test]
fn undecided_joins_are_not_failures() {
    let d: Diagnostic = Checker::new(Mode::Base)
        .with_fuel(3)
        .infer(
            &Context::new(),
            &tvec_core::frontend::parse_term(
                "join ((fun x : Nat => x) ((fun x : Nat => x) ((fun x : Nat => x) ((fun x : Nat => x) 0)))) 0",
            )
            .unwrap(),
        )
        .unwrap_err();
    assert_eq!(d.kind, DiagnosticKind::JoinUndecided);
}
