//! The four subcommands, each producing a [`Report`].

use sparse_galois::criterion::SufficientCondition;
use sparse_galois::lattice::Index;
use sparse_galois::monodromy::LoopOutcome;
use sparse_galois::tuples::reducibility_witness;
use sparse_galois::{
    criterion, essential_vectors, inductive_connectivity, is_ample, is_analogous, is_reduced, normalize,
    poisson_divisibility_check, reduction, run_monodromy, verify_wreath_structure, Error, MonodromyConfig,
    MonodromyRun, SupportTuple, Verdict,
};

use crate::document::{ConnectivityDocument, TupleDocument};
use crate::error::CliError;
use crate::report::*;

/// Numerical settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub budget: usize,
    pub newton_tol: f64,
    pub match_tol: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, budget: 400, newton_tol: 1e-12, match_tol: 1e-4 }
    }
}

impl Options {
    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            seed: Int::from(self.seed),
            budget: self.budget,
            newton_tol: self.newton_tol,
            match_tol: self.match_tol,
        }
    }

    pub fn monodromy_config(&self) -> MonodromyConfig {
        let mut config = MonodromyConfig { budget: self.budget, seed: self.seed, match_tol: self.match_tol, ..Default::default() };
        config.tracker.endpoint_tol = self.newton_tol;
        config
    }
}

fn sets(t: &SupportTuple) -> Vec<Points> {
    t.sets().iter().map(|s| points(s.points())).collect()
}

fn echo(doc: &TupleDocument) -> InputEcho {
    InputEcho {
        n: doc.n,
        supports: doc.supports.iter().map(|s| points(s)).collect(),
        labels: doc.labels.clone(),
    }
}

fn index(i: &Index) -> Option<Int> {
    i.finite().map(Int::from)
}

fn verdict_report(v: &Verdict) -> VerdictReport {
    let g = v.group();
    let mut r = VerdictReport {
        name: v.name().to_string(),
        expected_group: GroupReport {
            quotient_invariants: ints(&g.quotient_invariants),
            m: g.m.into(),
            d: g.d.into(),
            total_roots: g.total_roots.into(),
            expected_order: (&g.expected_order).into(),
        },
        condition: None,
        witness: None,
        gap: None,
    };
    match v {
        Verdict::ExpectedWreath { condition, .. } => {
            r.condition = Some(
                match condition {
                    SufficientCondition::FacetVectors => "facet-vectors",
                    SufficientCondition::StandardSimplex => "standard-simplex",
                    SufficientCondition::ClassB => "class-b",
                }
                .to_string(),
            );
        }
        Verdict::StrictlySmaller { witness, .. } => {
            r.witness = Some(WitnessReport {
                b: ints(&witness.b),
                p: witness.p.into(),
                divides_each_covector: witness.divides_each_covector,
            });
        }
        Verdict::Inconclusive { gap, .. } => {
            r.gap = Some(GapReport {
                facet_lattice: points(&gap.facet_lattice),
                facet_index: index(&gap.facet_index),
                grouped_lattice: points(&gap.grouped_lattice),
                grouped_index: index(&gap.grouped_index),
                note: gap.note.clone(),
            });
        }
    }
    r
}

/// Fills the combinatorial sections. With `strict` every failure is returned;
/// otherwise failures after the reduction become warnings.
fn combinatorics(report: &mut Report, t: &SupportTuple, strict: bool) -> Result<(), CliError> {
    let soft = |report: &mut Report, what: &str, e: Error| -> Result<(), CliError> {
        if strict {
            Err(e.into())
        } else {
            report.warnings.push(format!("{what}: {e}"));
            Ok(())
        }
    };
    let total = t.mixed_volume()?;
    report.mixed_volume = Some(MixedVolumes { total: total.into(), reduced: None });
    let normalized = normalize(t);
    let red = reduction(&normalized)?;
    report.reduction = Some(ReductionSummary {
        normalized: sets(&normalized),
        lattice_basis: red.lambda.basis().columns_i64().map(|c| points(&c)).ok_or(Error::Overflow)?,
        index: (&red.index).into(),
        quotient_invariants: ints(&red.quotient_invariants),
        reduced: sets(&red.reduced),
    });
    if let Some(mv) = report.mixed_volume.as_mut() {
        mv.reduced = Some(red.reduced.mixed_volume()?.into());
    }
    let analogous = is_analogous(t).ok();
    report.flags = Some(Flags {
        reduced: is_reduced(&normalized),
        irreducible: reducibility_witness(&red.reduced).is_none(),
        analogous,
        ample: if analogous == Some(true) { is_ample(t).ok() } else { None },
    });
    match criterion(t) {
        Ok(v) => report.verdict = Some(verdict_report(&v)),
        Err(e) => soft(report, "criterion", e)?,
    }
    match essential_vectors(&red.reduced) {
        Ok(ess) => {
            report.essential = Some(
                ess.records
                    .iter()
                    .map(|r| EssentialRow {
                        gamma: ints(&r.gamma),
                        k_gamma: r.k_gamma.clone(),
                        d_prime: r.d_prime.into(),
                        d_double_prime: r.d_double_prime.into(),
                        d_gamma: r.d.into(),
                        in_e0: r.in_e0,
                        tuple_id: r.tuple_id,
                    })
                    .collect(),
            )
        }
        Err(e) => soft(report, "essential covectors", e)?,
    }
    Ok(())
}

pub fn analyze(doc: &TupleDocument, opts: &Options) -> Result<Report, CliError> {
    let t = doc.tuple()?;
    let mut report = Report::new(Command::Analyze, opts.echo());
    report.input = Some(echo(doc));
    combinatorics(&mut report, &t, true)?;
    Ok(report)
}

pub fn mixed_volume(doc: &TupleDocument, opts: &Options) -> Result<Report, CliError> {
    let t = doc.tuple()?;
    let mut report = Report::new(Command::MixedVolume, opts.echo());
    report.input = Some(echo(doc));
    report.mixed_volume = Some(MixedVolumes { total: t.mixed_volume()?.into(), reduced: None });
    Ok(report)
}

pub fn connectivity(doc: &ConnectivityDocument, opts: &Options) -> Result<Report, CliError> {
    let ambient = doc.ambient();
    let (invariants, free_rank) = ambient.structure();
    let mut report = Report::new(Command::Connectivity, opts.echo());
    report.connectivity = Some(ConnectivitySection {
        ambient_generators: doc.ambient_generators,
        ambient_torsion: ints(&invariants),
        ambient_free_rank: free_rank,
        relations: points(&doc.relations),
        cover_image: points(&doc.cover_image),
        subset_image: points(&doc.subset_image),
        connected: inductive_connectivity(&doc.cover(), &doc.subset(), &ambient),
    });
    Ok(report)
}

pub fn monodromy(doc: &TupleDocument, opts: &Options) -> Result<Report, CliError> {
    let t = doc.tuple()?;
    let mut report = Report::new(Command::Monodromy, opts.echo());
    report.input = Some(echo(doc));
    combinatorics(&mut report, &t, false)?;
    let run = run_monodromy(&t, &opts.monodromy_config())?;
    report.monodromy = Some(monodromy_section(&run, &mut report.warnings)?);
    if run.budget_exhausted {
        report.warnings.push(format!(
            "loop budget of {} exhausted before the solution lattice was decided",
            run.config.budget
        ));
    }
    Ok(report)
}

fn monodromy_section(run: &MonodromyRun, warnings: &mut Vec<String>) -> Result<MonodromySection, CliError> {
    let wreath = verify_wreath_structure(run, &run.reduction)?;
    let n = run.tuple.dim();
    let mut poisson = Vec::new();
    for k in 0..n {
        let b: Vec<i64> = (0..n).map(|i| i64::from(i == k)).collect();
        match poisson_divisibility_check(run, &b) {
            Ok(p) => poisson.push(PoissonEntry {
                b: ints(&b),
                modulus: p.modulus.into(),
                loops_checked: p.loops_checked,
                holds: true,
                violation: None,
            }),
            Err(e @ Error::DivisibilityViolated { modulus, .. }) => poisson.push(PoissonEntry {
                b: ints(&b),
                modulus: modulus.into(),
                loops_checked: run.closed_windings.len(),
                holds: false,
                violation: Some(e.to_string()),
            }),
            Err(e) => warnings.push(format!("divisibility check for {b:?}: {e}")),
        }
    }
    let loops = run
        .loops
        .iter()
        .map(|l| match &l.outcome {
            LoopOutcome::Accepted { permutation, enlarged_group, .. } => LoopSummary {
                index: l.index,
                kind: l.kind.name().to_string(),
                accepted: true,
                permutation: Some(permutation.to_string()),
                enlarged_group: *enlarged_group,
                reason: None,
            },
            LoopOutcome::Rejected { reason } => LoopSummary {
                index: l.index,
                kind: l.kind.name().to_string(),
                accepted: false,
                permutation: None,
                enlarged_group: false,
                reason: Some(reason.clone()),
            },
        })
        .collect();
    Ok(MonodromySection {
        roots: run.roots.len(),
        max_residual: run.roots.iter().map(|r| r.residual).fold(0.0, f64::max),
        loops_used: run.loops.len(),
        accepted: run.accepted(),
        rejected: run.rejected(),
        group_order: run.order().into(),
        order_history: run.order_history.iter().map(Int::from).collect(),
        generators: run.group.generators().iter().map(ToString::to_string).collect(),
        blocks: wreath.blocks.clone(),
        block_size: wreath.block_size,
        block_count: wreath.block_count,
        wreath: Some(WreathCheck {
            wreath_order: wreath.wreath_order.into(),
            contained: wreath.contained,
            index: wreath.index.map(Int::from),
            block_action_order: wreath.block_action_order.into(),
            generators_even: wreath.generators_even,
        }),
        solution_lattice: SolutionLatticeReport {
            ambient_rank: run.solution_lattice.ambient_rank(),
            invariants: run.solution_lattice_invariants().iter().map(Int::from).collect(),
            full: run.solution_lattice_is_full(),
            inductively_connected: run.inductively_connected,
            decided: run.lattice_decided,
            closed_windings: run.closed_windings.len(),
        },
        poisson,
        stable_loops: run.stable_loops,
        budget_exhausted: run.budget_exhausted,
        loops,
    })
}

