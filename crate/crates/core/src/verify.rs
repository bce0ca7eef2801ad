//! Verification sweeps, each producing a [`Report`].
//!
//! Mathematical failures are recorded in the report with witnesses. Errors
//! returned from [`run`] are usage problems: unsupported quiver type, bad
//! parameters, malformed input.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bound::counterexample_report;
use crate::category::{
    den_vs_hom_crosscheck, den_vs_hom_exhaustive, module_oracle_crosscheck, theorem1_injectivity,
    GammaC,
};
use crate::error::{Error, Result};
use crate::laurent::{den_injectivity_check, explore_exchange_graph, explore_from, Seed};
use crate::linalg::{Matrix, Q};
use crate::quiver::{ExchangeMatrix, NamedQuiver, Quiver};
use crate::rep::{atilde21_tube_modules, ext1_dim, Representation};
use crate::report::Report;
use crate::tilting::{enumerate_tilting_modules, prop8_descent, Catalog};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Theorem1,
    Corollary4,
    Corollary5,
    Counterexample,
    Prop8,
    Lemma67,
    Denomhom,
    Oracles,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Theorem1,
        Target::Corollary4,
        Target::Corollary5,
        Target::Counterexample,
        Target::Prop8,
        Target::Lemma67,
        Target::Denomhom,
        Target::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Theorem1 => "theorem1",
            Target::Corollary4 => "corollary4",
            Target::Corollary5 => "corollary5",
            Target::Counterexample => "counterexample",
            Target::Prop8 => "prop8",
            Target::Lemma67 => "lemma67",
            Target::Denomhom => "denomhom",
            Target::Oracles => "oracles",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown verification target '{s}'")))
    }
}

/// Quiver under test, with the label used in reports.
#[derive(Clone, Debug)]
pub struct Subject {
    pub label: String,
    pub quiver: Quiver,
}

impl From<NamedQuiver> for Subject {
    fn from(q: NamedQuiver) -> Self {
        Self {
            label: q.name().to_string(),
            quiver: q.quiver(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub subject: Option<Subject>,
    pub depth: Option<usize>,
    pub seed: u64,
    /// Number of random sequences for randomized sweeps.
    pub count: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 20_240_521;

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            subject: None,
            depth: None,
            seed: DEFAULT_SEED,
            count: None,
        }
    }
}

impl VerifyOptions {
    pub fn with_type(q: NamedQuiver) -> Self {
        Self {
            subject: Some(q.into()),
            ..Self::default()
        }
    }

    fn subject_or(&self, q: NamedQuiver) -> Subject {
        self.subject.clone().unwrap_or_else(|| q.into())
    }
}

pub fn run(target: Target, opts: &VerifyOptions) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new(format!("verify {target}")).param("seed", opts.seed);
    let outcome = match target {
        Target::Theorem1 => theorem1(opts, &mut report),
        Target::Corollary4 => corollary4(opts, &mut report),
        Target::Corollary5 => corollary5(opts, &mut report),
        Target::Counterexample => counterexample(&mut report),
        Target::Prop8 => prop8(opts, &mut report),
        Target::Lemma67 => lemma67(opts, &mut report),
        Target::Denomhom => denomhom(opts, &mut report),
        Target::Oracles => oracles(opts, &mut report),
    };
    match outcome {
        Ok(()) => {}
        Err(Error::Verification(w)) => report.fail(w),
        Err(
            e @ (Error::NoComplement(_)
            | Error::MultipleComplements { .. }
            | Error::NoDescentSummand),
        ) => report.fail(e.to_string()),
        Err(e) => return Err(e),
    }
    report.elapsed_micros = start.elapsed().as_micros() as u64;
    Ok(report)
}

fn theorem1(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::A3);
    report.parameters.insert("type".into(), s.label.clone());
    let r = theorem1_injectivity(&s.quiver)?;
    let clusters = explore_exchange_graph(&ExchangeMatrix::from_quiver(&s.quiver), None)?
        .clusters
        .len();
    report.count("tilting_objects", r.tilting_objects);
    report.count("clusters", clusters);
    report.count("vertices", r.vertices);
    report.count("lemma7_pairs_checked", r.lemma7_pairs_checked);
    report.count("descent_steps", r.descent_steps);
    if clusters != r.tilting_objects {
        report.fail(format!(
            "{} tilting objects but {} clusters",
            r.tilting_objects, clusters
        ));
    }
    report.fail_all(r.failures.iter().cloned());
    report.set_details(&r.tables)
}

fn corollary4(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::A3);
    report.parameters.insert("type".into(), s.label.clone());
    let base = explore_exchange_graph(&ExchangeMatrix::from_quiver(&s.quiver), None)?;
    let total = base.variables.len();
    let mut checked = 0;
    for seed in &base.seeds {
        // every variable, written in the cluster of this seed
        let local = explore_from(Seed::initial(seed.matrix().clone()), None, |_, _| 0)?;
        let vars: Vec<_> = local.variables.values().cloned().collect();
        if vars.len() != total {
            report.fail(format!(
                "{} variables seen from cluster {:?}, expected {total}",
                vars.len(),
                seed.canonical_cluster()
            ));
        }
        if let Some((a, b)) = den_injectivity_check(&vars)? {
            report.fail(format!(
                "in cluster {:?}: {} and {} share denominator {:?}",
                seed.canonical_cluster(),
                a,
                b,
                a.denominator_vector()?.0
            ));
        }
        checked += vars.len();
    }
    report.count("clusters", base.seeds.len());
    report.count("cluster_variables", total);
    report.count("denominators_checked", checked);
    Ok(())
}

#[derive(Serialize)]
struct Corollary5Details {
    variables_by_depth: Vec<usize>,
    denominators: Vec<(String, Vec<i64>)>,
}

fn corollary5(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::Atilde21);
    let depth = opts.depth.unwrap_or(6);
    report.parameters.insert("type".into(), s.label.clone());
    report.parameters.insert("depth".into(), depth.to_string());
    let ex = explore_exchange_graph(&ExchangeMatrix::from_quiver(&s.quiver), Some(depth))?;
    let vars: Vec<_> = ex.variables.values().cloned().collect();
    if let Some((a, b)) = den_injectivity_check(&vars)? {
        report.fail(format!(
            "{} and {} share denominator {:?}",
            a,
            b,
            a.denominator_vector()?.0
        ));
    }
    report.truncated = ex.truncated;
    if ex.truncated {
        report.note(format!(
            "search stopped at depth {depth}; unseen clusters remain"
        ));
    }
    report.count("seeds", ex.seeds.len());
    report.count("cluster_variables", vars.len());
    let denominators = vars
        .iter()
        .map(|x| Ok((x.render(), x.denominator_vector()?.0)))
        .collect::<Result<_>>()?;
    report.set_details(&Corollary5Details {
        variables_by_depth: ex.variables_by_depth.clone(),
        denominators,
    })
}

fn counterexample(report: &mut Report) -> Result<()> {
    let r = counterexample_report()?;
    let tube = atilde21_tube_modules()?;
    report.count("algebra_dim", r.algebra_dim);
    report.count("ext1_mm", r.ext_mm);
    report.count("ext1_nn", r.ext_nn);
    report.count("lift_ext1_cluster_category", r.lift_ext_cluster_category);
    if r.dim_m != vec![1, 1, 1] || r.dim_n != vec![1, 1, 1] {
        report.fail(format!("dim M = {:?}, dim N = {:?}", r.dim_m, r.dim_n));
    }
    if r.lift_ext_cluster_category != 2 {
        report.fail(format!(
            "Ext¹ of the lift in the cluster category is {}",
            r.lift_ext_cluster_category
        ));
    }
    if tube.m.dim_vector() != vec![1, 1, 1] {
        report.fail(format!(
            "lift has dimension vector {:?}",
            tube.m.dim_vector()
        ));
    }
    report.note("Hom(M, N) is reported with its basis; every nonzero map factors through I2");
    report.set_details(&r)
}

fn prop8(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::A3);
    report.parameters.insert("type".into(), s.label.clone());
    let cat = Catalog::new(&s.quiver)?;
    let all = enumerate_tilting_modules(&cat);
    let mut chains = Vec::new();
    let mut steps = 0;
    for t in &all {
        let chain = prop8_descent(&cat, t)?;
        for st in &chain.steps {
            let sum: Vec<i64> = st.t0.iter().zip(&st.t0_prime).map(|(a, b)| a + b).collect();
            if st.e != sum {
                report.fail(format!(
                    "dim E = {:?} but dim T0 + dim T0' = {:?}",
                    st.e, sum
                ));
            }
            if st.torsion_after >= st.torsion_before {
                report.fail(format!(
                    "torsion class does not shrink from {:?}",
                    chain.start
                ));
            }
        }
        if chain.steps.len() > cat.len() {
            report.fail(format!("chain from {:?} too long", chain.start));
        }
        steps += chain.steps.len();
        chains.push(chain);
    }
    report.count("tilting_modules", all.len());
    report.count("indecomposables", cat.len());
    report.count("descent_steps", steps);
    report.count(
        "longest_chain",
        chains.iter().map(|c| c.steps.len()).max().unwrap_or(0),
    );
    report.set_details(&chains)
}

fn lemma67(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::A3);
    report.parameters.insert("type".into(), s.label.clone());
    let g = GammaC::build(&s.quiver)?;
    let graph = g.tilting_graph()?;
    let (mut lemma6, mut formula, mut lemma7_pairs, mut steps) = (0, 0, 0, 0);
    for node in &graph.nodes {
        for k in 0..g.rank() {
            let (_, x) = g.mutate_tilting(&node.seed, k)?;
            for m in g.vertices() {
                lemma6 += 1;
                if !g.lemma6_check(m, &x) {
                    report.fail(format!(
                        "dual criterion disagrees for M = {} at T = {}, k = {}",
                        g.name(m),
                        node.seed.render(&g),
                        k + 1
                    ));
                }
                if m == g.tau_inv(x.tk) || m == g.tau_inv(x.tk_star) {
                    continue;
                }
                formula += 1;
                if !g.max_formula(m, &x) {
                    report.fail(format!(
                        "max-formula fails for M = {} at T = {}, k = {}",
                        g.name(m),
                        node.seed.render(&g),
                        k + 1
                    ));
                }
            }
            let (pairs, fails) = g.lemma7_step(&node.seed, k)?;
            lemma7_pairs += pairs;
            steps += 1;
            report.fail_all(fails);
        }
    }
    let mut cy = 0;
    for m in g.vertices() {
        for y in g.vertices() {
            cy += 1;
            if g.hom_c_dim(m, g.tau_power(y, 2)) != g.hom_c_dim(y, m) {
                report.fail(format!(
                    "Hom({}, Σ²{}) and Hom({}, {}) differ",
                    g.name(m),
                    g.name(y),
                    g.name(y),
                    g.name(m)
                ));
            }
        }
    }
    report.count("tilting_objects", graph.len());
    report.count("lemma6_cases", lemma6);
    report.count("max_formula_cases", formula);
    report.count("lemma7_steps", steps);
    report.count("lemma7_pairs", lemma7_pairs);
    report.count("calabi_yau_pairs", cy);
    report
        .note("the dual criterion is evaluated with M = ΣT_k or M = ΣT_k* as its first two cases");
    Ok(())
}

fn denomhom(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let s = opts.subject_or(NamedQuiver::A3);
    let depth = opts.depth.unwrap_or(8);
    let count = opts.count.unwrap_or(100);
    report.parameters.insert("type".into(), s.label.clone());
    report.parameters.insert("depth".into(), depth.to_string());
    report.parameters.insert("count".into(), count.to_string());
    let r = den_vs_hom_crosscheck(&s.quiver, depth, count, opts.seed)?;
    report.count("sequences", r.sequences);
    report.count("steps", r.steps);
    report.count("comparisons", r.comparisons);
    report.count("initial_variable_cases", r.initial_variable_cases);
    report.fail_all(r.failures.iter().cloned());
    if s.quiver.n() == 2 {
        let ex = den_vs_hom_exhaustive(&s.quiver, depth.min(5))?;
        report.count("exhaustive_sequences", ex.sequences);
        report.fail_all(ex.failures);
    }
    report.note("cluster variable x_i corresponds to ΣT'_i for the current tilting object T'");
    Ok(())
}

fn random_representation(q: &Quiver, rng: &mut ChaCha8Rng) -> Result<Representation> {
    let dims: Vec<usize> = (0..q.n()).map(|_| rng.gen_range(0..=2)).collect();
    let mats = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            Matrix::from_fn(dims[t], dims[s], |_, _| {
                Q::from_integer(rng.gen_range(-2i64..=2).into())
            })
        })
        .collect();
    Representation::new(q.clone(), dims, mats)
}

fn oracles(opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    let count = opts.count.unwrap_or(1000);
    let depth = opts.depth.unwrap_or(12);
    report.parameters.insert("count".into(), count.to_string());
    report.parameters.insert("depth".into(), depth.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let (pairs, fails) = module_oracle_crosscheck(&NamedQuiver::A3.quiver())?;
    report.count("hammock_vs_modules_pairs", pairs);
    report.fail_all(fails);

    let kinds = [NamedQuiver::A3, NamedQuiver::D4, NamedQuiver::Atilde21];
    let mut ext_checks = 0;
    for i in 0..200 {
        let q = kinds[i % kinds.len()].quiver();
        let m = random_representation(&q, &mut rng)?;
        let n = random_representation(&q, &mut rng)?;
        match ext1_dim(&m, &n) {
            Ok(_) => ext_checks += 1,
            Err(e @ Error::NegativeExt { .. }) => report.fail(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    report.count("ext_nonnegative_checks", ext_checks);

    let mut cy = 0;
    for q in [NamedQuiver::A2, NamedQuiver::A3, NamedQuiver::D4] {
        let g = GammaC::build(&q.quiver())?;
        for x in g.vertices() {
            for y in g.vertices() {
                cy += 1;
                if g.ext1_c_dim(x, y) != g.ext1_c_dim(y, x) {
                    report.fail(format!(
                        "{}: Ext¹({}, {}) is not symmetric",
                        q.name(),
                        g.name(x),
                        g.name(y)
                    ));
                }
            }
        }
    }
    report.count("two_cy_pairs", cy);

    let (mut involutions, mut sequences) = (0, 0);
    for i in 0..count {
        let q = kinds[i % kinds.len()];
        let b = ExchangeMatrix::from_quiver(&q.quiver());
        let len = rng.gen_range(1..=depth.max(1));
        let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..b.n())).collect();
        let mut seed = Seed::initial(b);
        for (step, &k) in seq.iter().enumerate() {
            let next = match seed.mutate(k) {
                Ok(s) => s,
                Err(e @ Error::DivisionNotExact) => {
                    report.fail(format!(
                        "{} along {:?}: {e}",
                        q.name(),
                        seq[..=step].iter().map(|k| k + 1).collect::<Vec<_>>()
                    ));
                    break;
                }
                Err(e) => return Err(e),
            };
            if step % 3 == 0 {
                involutions += 1;
                let back = next.mutate(k)?;
                if back != seed || next.matrix().mutate(k)? != *seed.matrix() {
                    report.fail(format!(
                        "mutation at {} is not an involution on {}",
                        k + 1,
                        q.name()
                    ));
                }
            }
            seed = next;
        }
        sequences += 1;
    }
    report.count("random_sequences", sequences);
    report.count("involution_checks", involutions);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_parse() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nope".parse::<Target>().is_err());
    }

    #[test]
    fn counterexample_passes() {
        let r = run(Target::Counterexample, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.counts["lift_ext1_cluster_category"], 2);
    }

    #[test]
    fn categorical_targets_reject_affine() {
        let opts = VerifyOptions::with_type(NamedQuiver::Atilde21);
        assert!(matches!(
            run(Target::Theorem1, &opts),
            Err(Error::NotDynkin(_))
        ));
    }

    #[test]
    fn small_sweeps_pass() {
        for t in [
            Target::Theorem1,
            Target::Corollary4,
            Target::Lemma67,
            Target::Denomhom,
        ] {
            let r = run(t, &VerifyOptions::with_type(NamedQuiver::A2)).unwrap();
            assert!(r.pass, "{t}: {:?}", r.witnesses);
        }
    }
}
