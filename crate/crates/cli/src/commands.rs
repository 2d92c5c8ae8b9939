use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::record::{GraphInfo, RunRecord, CSV_HEADER};
use crate::source::{parse_gen_spec, read_graph_file, FileFormat, GraphDescriptor};
use mqo_core::graph::{generate, write_canonical, GraphGenSpec};
use mqo_core::mqo::{presets, solve_maxcut, solve_mis, solve_pooled, GraphFamily, InitMode, PoolConfig};
use mqo_core::objectives::DEFAULT_LAMBDA;
use mqo_core::{Graph, ObjectiveSpec, Problem, SolverConfig};
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Writes `text` to `out`, or stdout when `None`.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn gen_spec(args: &GenArgs) -> CliResult<GraphGenSpec> {
    let need = |name: &str| usage(format!("--kind {:?} requires --{name}", args.kind));
    let spec = match args.kind {
        KindArg::Er => {
            let p = match (args.p, args.d) {
                (Some(p), None) => p,
                (None, Some(d)) if args.n > 0 => d / args.n as f64,
                (None, Some(_)) => 0.0,
                _ => return Err(usage("--kind er requires exactly one of --p and --d")),
            };
            GraphGenSpec::erdos_renyi(args.n, p, args.seed)
        }
        KindArg::Ba => GraphGenSpec::barabasi_albert(args.n, args.m_attach.ok_or_else(|| need("m-attach"))?, args.seed),
        KindArg::Sbm => GraphGenSpec::stochastic_block(
            args.n,
            args.k.ok_or_else(|| need("k"))?,
            args.p_in.ok_or_else(|| need("p-in"))?,
            args.p_out.ok_or_else(|| need("p-out"))?,
            args.seed,
        ),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn cmd_gen(args: &GenArgs) -> CliResult<()> {
    let g = generate(&gen_spec(args)?)?;
    log::info!("generated n = {}, m = {}", g.n(), g.m());
    emit(args.out.as_deref(), &write_canonical(&g))
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub descriptor: GraphDescriptor,
    pub family: GraphFamily,
    pub secs: f64,
}

pub fn load_graph(args: &SolveArgs) -> CliResult<LoadedGraph> {
    let start = Instant::now();
    let (graph, descriptor, family) = match (&args.graph, &args.gen) {
        (Some(path), None) => {
            let (g, format) = read_graph_file(path)?;
            let family = match format {
                FileFormat::Dimacs => GraphFamily::Dimacs,
                FileFormat::Canonical => GraphFamily::ErdosRenyi,
            };
            let descriptor = GraphDescriptor::File {
                path: path.display().to_string(),
                format,
            };
            (g, descriptor, family)
        }
        (None, Some(spec)) => {
            let spec = parse_gen_spec(spec, args.seed)?;
            let descriptor = GraphDescriptor::Generated { spec: spec.canonical() };
            (spec.build()?, descriptor, spec.family())
        }
        _ => return Err(usage("exactly one of --graph and --gen is required")),
    };
    let family = match args.family {
        Some(FamilyArg::Er) => GraphFamily::ErdosRenyi,
        Some(FamilyArg::Sbm) => GraphFamily::StochasticBlock,
        Some(FamilyArg::Ba) => GraphFamily::BarabasiAlbert,
        Some(FamilyArg::Rb) => GraphFamily::Rb,
        Some(FamilyArg::Dimacs) => GraphFamily::Dimacs,
        None => family,
    };
    Ok(LoadedGraph {
        graph,
        descriptor,
        family,
        secs: start.elapsed().as_secs_f64(),
    })
}

/// Solver config from defaults, the preset row (if any), then explicit flags.
pub fn build_config(args: &SolveArgs, g: &Graph, family: GraphFamily) -> CliResult<SolverConfig> {
    let problem = match args.problem {
        ProblemArg::Mis => Problem::Mis,
        ProblemArg::Maxcut => Problem::MaxCut,
    };
    let mut cfg = SolverConfig::for_problem(problem);
    if args.preset == PresetArg::Auto {
        let row = presets::lookup(problem, Some(family), g.n(), g.mean_degree());
        log::info!("preset row {:?} n = {} d = {}", row.family, row.n, row.d);
        cfg.apply_preset(row);
    }
    cfg.objective = match problem {
        Problem::Mis => {
            if args.objective.is_some() || args.lambda.is_some() {
                return Err(usage("--objective and --lambda apply to max-cut only"));
            }
            match args.gamma {
                Some(gamma) => ObjectiveSpec::MisQubo { gamma },
                None => ObjectiveSpec::mis(),
            }
        }
        Problem::MaxCut => {
            if args.gamma.is_some() {
                return Err(usage("--gamma applies to MIS only"));
            }
            let lambda = args.lambda.unwrap_or(DEFAULT_LAMBDA);
            match args.objective.unwrap_or(ObjectiveArg::PerturbedBias) {
                ObjectiveArg::PerturbedBias => ObjectiveSpec::PerturbedBias { lambda },
                ObjectiveArg::PerturbedLaplacian => ObjectiveSpec::PerturbedLaplacian { lambda },
                unperturbed => {
                    if args.lambda.is_some() {
                        return Err(usage("--lambda needs a perturbed objective"));
                    }
                    match unperturbed {
                        ObjectiveArg::Laplacian => ObjectiveSpec::Laplacian,
                        _ => ObjectiveSpec::Adjacency,
                    }
                }
            }
        }
    };
    let o = &mut cfg.optimizer;
    o.alpha = args.alpha.unwrap_or(o.alpha);
    o.momentum = args.momentum.unwrap_or(o.momentum);
    o.max_iters = args.max_iters.unwrap_or(o.max_iters);
    cfg.rho = args.rho.unwrap_or(cfg.rho);
    cfg.t_gs = args.tgs.unwrap_or(cfg.t_gs);
    cfg.sigma = args.sigma.unwrap_or(cfg.sigma);
    cfg.time_budget = args.budget_secs.unwrap_or(cfg.time_budget);
    cfg.seed = args.seed;
    cfg.local_search = !args.no_local_search;
    cfg.pool = PoolConfig {
        batch: args.pool_b,
        keep: args.pool_k,
    };
    cfg.max_loops = args.max_loops;
    if let Some(value) = args.init_constant {
        if args.rho.is_some() || args.tgs.is_some() || args.max_loops.is_some() {
            return Err(usage(
                "--init-constant runs a single trajectory; drop --rho/--tgs/--max-loops",
            ));
        }
        cfg.init = InitMode::Constant { value };
        cfg.max_loops = Some(1);
        cfg.t_gs = 0;
        cfg.local_search = false;
    }
    cfg.validate()
        .map_err(|e| usage(format!("invalid configuration: {e}")))?;
    Ok(cfg)
}

/// Loads the graph, solves, and re-scores the result before returning it.
pub fn run_solve(args: &SolveArgs) -> CliResult<RunRecord> {
    let loaded = load_graph(args)?;
    let cfg = build_config(args, &loaded.graph, loaded.family)?;
    let g = &loaded.graph;
    let report = if cfg.pool == PoolConfig::SEQUENTIAL {
        match cfg.problem() {
            Problem::Mis => solve_mis(g, &cfg)?,
            Problem::MaxCut => solve_maxcut(g, &cfg)?,
        }
    } else {
        solve_pooled(g, &cfg)?
    };
    report
        .verify(g)
        .map_err(|e| CliError::Failed(format!("inconsistent report: {e}")))?;
    let info = GraphInfo {
        descriptor: loaded.descriptor,
        n: g.n(),
        m: g.m(),
    };
    let record = RunRecord::from_report(&report, info, loaded.secs);
    record.rescore(g)?;
    Ok(record)
}

pub fn cmd_solve(args: &SolveArgs) -> CliResult<()> {
    let record = run_solve(args)?;
    log::info!(
        "best {} after {} loops in {:.2}s",
        record.best_score,
        record.outer_loops,
        record.timings.solve_secs
    );
    let text = match args.report.unwrap_or(ReportArg::Json) {
        ReportArg::Json => format!("{}\n", record.to_json()),
        ReportArg::Csv => format!("{CSV_HEADER}\n{}\n", record.csv_row()),
    };
    emit(args.out.as_deref(), &text)
}

fn parse_value<T: std::str::FromStr>(param: SweepParam, v: &str) -> CliResult<T> {
    v.trim()
        .parse()
        .map_err(|_| usage(format!("bad value {v:?} for {param:?}")))
}

/// `base` with the swept parameter set to `value`.
pub fn apply_sweep_value(base: &SolveArgs, param: SweepParam, value: &str) -> CliResult<SolveArgs> {
    let mut args = base.clone();
    match param {
        SweepParam::Rho => args.rho = Some(parse_value(param, value)?),
        SweepParam::Lambda => args.lambda = Some(parse_value(param, value)?),
        SweepParam::Momentum => args.momentum = Some(parse_value(param, value)?),
        SweepParam::Alpha => args.alpha = Some(parse_value(param, value)?),
        SweepParam::Tgs => args.tgs = Some(parse_value(param, value)?),
        SweepParam::Gamma => args.gamma = Some(parse_value(param, value)?),
        SweepParam::LocalSearch => {
            args.no_local_search = match value.trim() {
                "on" | "true" => false,
                "off" | "false" => true,
                _ => return Err(usage(format!("local-search values are on/off, got {value:?}"))),
            }
        }
    }
    Ok(args)
}

pub struct SweepRun {
    pub value: String,
    pub record: RunRecord,
}

/// Runs every (value, seed) pair, `jobs` at a time, in input order.
pub fn run_sweep(args: &SweepArgs) -> CliResult<Vec<SweepRun>> {
    let seeds = if args.seeds.is_empty() {
        vec![args.solve.seed]
    } else {
        args.seeds.clone()
    };
    let mut tasks = Vec::new();
    for value in &args.values {
        let with_value = apply_sweep_value(&args.solve, args.param, value)?;
        for &seed in &seeds {
            let mut a = with_value.clone();
            a.seed = seed;
            a.out = None;
            tasks.push((value.trim().to_string(), a));
        }
    }
    // fail fast on configuration errors before any solving
    for (_, a) in &tasks {
        if a.init_constant.is_some() {
            return Err(usage("--init-constant cannot be swept"));
        }
    }
    let jobs = args.jobs.max(1).min(tasks.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<CliResult<RunRecord>>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((value, a)) = tasks.get(i) else { break };
                log::info!("sweep {:?} = {value}, seed {}", args.param, a.seed);
                let r = run_solve(a);
                results.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    let results = results.into_inner().expect("workers joined");
    tasks
        .into_iter()
        .zip(results)
        .map(|((value, _), r)| {
            Ok(SweepRun {
                value,
                record: r.expect("every task ran")?,
            })
        })
        .collect()
}

pub const SUMMARY_HEADER: &str =
    "param,value,runs,mean_best,min_best,max_best,mean_gain_gradient,mean_gain_reset,mean_gain_local_search";

fn param_name(p: SweepParam) -> &'static str {
    match p {
        SweepParam::Rho => "rho",
        SweepParam::Lambda => "lambda",
        SweepParam::Momentum => "momentum",
        SweepParam::Alpha => "alpha",
        SweepParam::Tgs => "tgs",
        SweepParam::Gamma => "gamma",
        SweepParam::LocalSearch => "local_search",
    }
}

/// Mean best score and phase gains per value, in first-seen order.
pub fn summarize(param: SweepParam, runs: &[SweepRun]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    let mut values: Vec<&str> = Vec::new();
    for r in runs {
        if !values.contains(&r.value.as_str()) {
            values.push(&r.value);
        }
    }
    for v in values {
        let group: Vec<&RunRecord> = runs.iter().filter(|r| r.value == v).map(|r| &r.record).collect();
        let k = group.len() as f64;
        let mean = |f: &dyn Fn(&RunRecord) -> u64| group.iter().map(|r| f(r) as f64).sum::<f64>() / k;
        let best: Vec<u64> = group.iter().map(|r| r.best_score).collect();
        out.push_str(&format!(
            "{},{},{},{:.2},{},{},{:.2},{:.2},{:.2}\n",
            param_name(param),
            v,
            group.len(),
            mean(&|r| r.best_score),
            best.iter().min().unwrap(),
            best.iter().max().unwrap(),
            mean(&|r| r.phase_gains.gradient),
            mean(&|r| r.phase_gains.reset),
            mean(&|r| r.phase_gains.local_search),
        ));
    }
    out
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let runs = run_sweep(args)?;
    let text = if args.summary {
        summarize(args.param, &runs)
    } else {
        match args.solve.report.unwrap_or(ReportArg::Csv) {
            ReportArg::Json => runs.iter().map(|r| format!("{}\n", r.record.to_json())).collect(),
            ReportArg::Csv => {
                let mut s = format!("param,value,{CSV_HEADER}\n");
                for r in &runs {
                    s.push_str(&format!(
                        "{},{},{}\n",
                        param_name(args.param),
                        r.value,
                        r.record.csv_row()
                    ));
                }
                s
            }
        }
    };
    emit(args.solve.out.as_deref(), &text)
}
