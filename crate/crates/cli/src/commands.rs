use std::fs;
use std::io::Write;
use std::path::Path;

use superlocc::bounds::{
    evaluate, survey_sample, BoundConfig, BoundReport, SurveyOptions, SurveySummary, Tally, Theorem, TheoremSummary,
};
use superlocc::scenarios::{
    builtin_rows, evaluate_sample, load_scenario_rows, search_witness, RowReport, SamplingMode, ScenarioRow,
};
use superlocc::{
    classify_pair, concurrence_squared, entropy_of_entanglement, incomparable_3x3_shortcut, log_negativity, negativity,
    renyi_entropy, schmidt_of_state, superpose, PureState, RandomSource, SuperpositionSpec,
};

use crate::certificate::{
    certificate_file_name, emit_bound_certificate, emit_scenario_certificate, parse_bound_document, parse_document,
    replay_bound, replay_scenario, ConfigOverrides, Document,
};
use crate::parallel::{default_workers, map_indices};
use crate::report::{Cell, Record, Report};
use crate::statefile::{emit_state_file, parse_state_file, FileError};
use crate::{parse_theorems, BoundsArgs, Cli, CliError, Command, MeasureName, TablesArgs, WitnessArgs};

type Res<T> = Result<T, CliError>;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn file_error(path: &Path, e: FileError) -> CliError {
    match e {
        FileError::State(inner) => CliError::from(inner),
        other => CliError::Input(format!("{}: {other}", path.display())),
    }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path, renormalize: bool, err: &mut dyn Write) -> Res<PureState> {
    let doc = parse_state_file(&read(path)?, renormalize).map_err(|e| file_error(path, e))?;
    if let Some(w) = doc.warning() {
        let _ = writeln!(err, "{}: {w}", path.display());
    }
    Ok(doc.state)
}

fn load_rows(path: Option<&Path>) -> Res<Vec<ScenarioRow>> {
    match path {
        Some(p) => load_scenario_rows(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => Ok(builtin_rows()),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Res<()> {
    out.write_all(text.as_bytes()).map_err(input)
}

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Res<()> {
    let workers = match cli.workers {
        Some(0) => return Err(input("--workers must be at least 1")),
        Some(w) => w,
        None => default_workers(),
    };
    let report = match &cli.command {
        Command::Classify { a, b } => classify(&load_state(a, cli.renormalize, err)?, &load_state(b, cli.renormalize, err)?)?,
        Command::Measure { state, measures, delta, base } => {
            measure(&load_state(state, cli.renormalize, err)?, measures, *delta, *base)?
        }
        Command::Superpose { alpha, beta, psi, phi, out: target } => {
            let psi = load_state(psi, cli.renormalize, err)?;
            let phi = load_state(phi, cli.renormalize, err)?;
            superpose_cmd(*alpha, *beta, psi, phi, target.as_deref())?
        }
        Command::Bounds(args) => bounds(args, workers)?,
        Command::Tables(args) => tables(args, workers)?,
        Command::Witness(args) => witness(args)?,
        Command::Replay { files, rows } => return replay(files, rows.as_deref(), cli, out),
    };
    emit(out, &report.render(cli.format))
}

fn classify(a: &PureState, b: &PureState) -> Res<Report> {
    let (sa, sb) = (schmidt_of_state(a)?, schmidt_of_state(b)?);
    let verdict = classify_pair(&sa, &sb);
    // The shortcut needs strictly ordered positive 3-vectors.
    let shortcut = match incomparable_3x3_shortcut(&sa, &sb) {
        Ok(v) if sa.probs()[2] > 0.0 && sb.probs()[2] > 0.0 => Cell::Bool(v),
        _ => Cell::Text("n/a".into()),
    };
    Ok(Report::single(
        Record::new()
            .with("verdict", verdict.as_str())
            .with("comparable", verdict.is_comparable())
            .with("schmidt_a", Cell::Nums(sa.probs().to_vec()))
            .with("schmidt_b", Cell::Nums(sb.probs().to_vec()))
            .with("shortcut_incomparable", shortcut),
    ))
}

fn measure(state: &PureState, measures: &[MeasureName], delta: Option<f64>, base: f64) -> Res<Report> {
    let s = schmidt_of_state(state)?;
    let mut r = Record::new().with("schmidt", Cell::Nums(s.probs().to_vec()));
    for m in measures {
        match m {
            MeasureName::E => r.push("e", entropy_of_entanglement(&s)),
            MeasureName::C2 => r.push("c2", concurrence_squared(&s)),
            MeasureName::N => r.push("n", negativity(&s)),
            MeasureName::Ln => r.push("ln", log_negativity(&s, base)?),
            MeasureName::Renyi => {
                let d = delta.ok_or_else(|| input("renyi needs --delta"))?;
                r.push("renyi", renyi_entropy(&s, d)?);
            }
        }
    }
    Ok(Report::single(r))
}

fn superpose_cmd(alpha: f64, beta: Option<f64>, psi: PureState, phi: PureState, target: Option<&Path>) -> Res<Report> {
    let spec = match beta {
        Some(b) => SuperpositionSpec::new(alpha, b, psi, phi)?,
        None => SuperpositionSpec::with_alpha(alpha, psi, phi)?,
    };
    let g = superpose(&spec)?;
    if let Some(path) = target {
        write_file(path, &emit_state_file(&g.state, None))?;
    }
    Ok(Report::single(
        Record::new()
            .with("alpha", spec.alpha())
            .with("beta", spec.beta())
            .with("overlap", g.overlap)
            .with("orthogonal", g.is_orthogonal())
            .with("norm_factor", g.norm_factor)
            .with("permuted", g.permuted)
            .with("schmidt", Cell::Nums(g.schmidt.probs().to_vec()))
            .with("e", entropy_of_entanglement(&g.schmidt))
            .with("c2", concurrence_squared(&g.schmidt))
            .with("n", negativity(&g.schmidt)),
    ))
}

fn write_certificates(dir: &Path, certs: impl IntoIterator<Item = (String, String)>) -> Res<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    for (id, text) in certs {
        write_file(&dir.join(certificate_file_name(&id)), &text)?;
    }
    Ok(())
}

fn bounds(args: &BoundsArgs, workers: usize) -> Res<Report> {
    let theorems = parse_theorems(&args.theorems)?;
    match (&args.instance, args.random) {
        (Some(path), _) => bounds_instance(args, &theorems, path),
        (None, Some(n)) => {
            let seed = args.seed.ok_or_else(|| input("--random needs --seed"))?;
            bounds_survey(args, theorems, n, seed, workers)
        }
        (None, None) => Err(input("give --instance FILE or --random N --seed S")),
    }
}

fn bound_record(report: &BoundReport) -> Record {
    let notes: Vec<String> = report.notes.iter().map(ToString::to_string).collect();
    Record::new()
        .with("theorem", report.theorem.as_str())
        .with("status", "ok")
        .with("lower_bound", report.lower_lhs)
        .with("lower_value", report.lower_rhs)
        .with("upper_value", report.upper_lhs)
        .with("upper_bound", report.upper_rhs)
        .with("margin_lower", report.margin_lower)
        .with("margin_upper", report.margin_upper)
        .with("chain", Cell::Nums(report.chain.clone()))
        .with("chain_margins", Cell::Nums(report.chain_margins.clone()))
        .with("holds", report.holds)
        .with("orthogonal", report.orthogonal)
        .with("overlap", report.instance.gamma().overlap)
        .with("notes", Cell::Texts(notes))
}

fn bounds_instance(args: &BoundsArgs, theorems: &[Theorem], path: &Path) -> Res<Report> {
    let overrides = ConfigOverrides {
        delta: args.delta,
        log_base: args.base,
        exclude_zero_coefficients: args.exclude_zeros.then_some(true),
    };
    let doc = parse_bound_document(&read(path)?, overrides).map_err(|e| file_error(path, e))?;
    let mut records = Vec::new();
    let mut certs = Vec::new();
    let mut evaluated = 0;
    for &t in theorems {
        match evaluate(t, &doc.instance, doc.partner.as_ref()) {
            Ok(report) => {
                evaluated += 1;
                if !report.holds {
                    let id = format!("{t}#instance");
                    certs.push((id.clone(), emit_bound_certificate(&id, &report)));
                }
                records.push(bound_record(&report));
            }
            Err(e) => {
                let mut r = Record::new().with("theorem", t.as_str()).with("status", format!("skipped: {e}"));
                for key in [
                    "lower_bound", "lower_value", "upper_value", "upper_bound", "margin_lower", "margin_upper", "chain",
                    "chain_margins", "holds", "orthogonal", "overlap", "notes",
                ] {
                    r.push(key, Cell::Empty);
                }
                records.push(r);
            }
        }
    }
    if evaluated == 0 {
        return Err(input("no requested theorem applies to this instance"));
    }
    if let Some(dir) = &args.certificates {
        write_certificates(dir, certs)?;
    }
    let report = Report { records, csv_columns: None };
    if let Some(out) = &args.out {
        write_file(out, &report.csv())?;
    }
    Ok(report)
}

fn tally_record(name: String, tally: &Tally, ids: Vec<String>, skipped: Option<usize>) -> Record {
    Record::new()
        .with("theorem", name)
        .with("n", tally.n)
        .with("hold_rate", tally.hold_rate())
        .with("worst_margin", if tally.n == 0 { f64::NAN } else { tally.worst_margin })
        .with("certificate_ids", Cell::Texts(ids))
        .with("skipped", skipped)
}

/// Summary rows: every theorem over all samples, then its orthogonal and
/// overlapping partitions.
pub fn survey_report(summary: &SurveySummary) -> Report {
    let mut records = Vec::new();
    let ids = |s: &TheoremSummary, pick: Option<bool>| -> Vec<String> {
        s.certificates
            .iter()
            .filter(|c| pick.is_none_or(|o| c.report.orthogonal == o))
            .map(|c| c.id.clone())
            .collect()
    };
    for s in &summary.theorems {
        records.push(tally_record(s.theorem.to_string(), &s.all, ids(s, None), Some(s.skipped)));
    }
    for s in &summary.theorems {
        records.push(tally_record(format!("{}/orthogonal", s.theorem), &s.orthogonal, ids(s, Some(true)), None));
        records.push(tally_record(format!("{}/overlapping", s.theorem), &s.overlapping, ids(s, Some(false)), None));
    }
    Report { records, csv_columns: Some(5) }
}

fn bounds_survey(args: &BoundsArgs, theorems: Vec<Theorem>, n: u64, seed: u64, workers: usize) -> Res<Report> {
    if n == 0 {
        return Err(input("--random must be at least 1"));
    }
    let defaults = BoundConfig::default();
    let options = SurveyOptions {
        theorems,
        orthogonal_only: args.orthogonal_only,
        config: BoundConfig {
            delta: args.delta.or(defaults.delta),
            log_base: args.base.unwrap_or(defaults.log_base),
            exclude_zero_coefficients: args.exclude_zeros,
        },
        dim: 3,
    };
    let source = RandomSource::new(seed, 0);
    let samples = map_indices(n, workers, |k| survey_sample(&source, k, &options).map(|r| (k, r)))?;
    let summary = SurveySummary::from_samples(&options, samples);
    if let Some(dir) = &args.certificates {
        let certs = summary.theorems.iter().flat_map(|s| &s.certificates);
        write_certificates(dir, certs.map(|c| (c.id.clone(), emit_bound_certificate(&c.id, &c.report))))?;
    }
    let report = survey_report(&summary);
    if let Some(out) = &args.out {
        write_file(out, &report.csv())?;
    }
    Ok(report)
}

fn mode(disjoint: bool) -> SamplingMode {
    if disjoint {
        SamplingMode::DisjointSupport
    } else {
        SamplingMode::SharedSupport
    }
}

/// Runs `samples` samples of every row, in row order.
pub fn run_tables(rows: &[ScenarioRow], samples: u64, seed: u64, mode: SamplingMode, workers: usize) -> Res<Vec<RowReport>> {
    let source = RandomSource::new(seed, 0);
    rows.iter()
        .map(|row| {
            let outcomes = map_indices(samples, workers, |k| evaluate_sample(row, &source, k, mode))?;
            Ok(RowReport::from_outcomes(row, outcomes))
        })
        .collect()
}

fn opt_str<T>(x: Option<T>, f: impl Fn(T) -> &'static str) -> Cell {
    x.map_or(Cell::Text("-".into()), |v| Cell::Text(f(v).into()))
}

pub fn table_report(reports: &[RowReport]) -> Report {
    let records = reports
        .iter()
        .map(|r| {
            Record::new()
                .with("row", r.row_id.clone())
                .with("case", r.case.as_str())
                .with("table", r.table.clone())
                .with("weights", r.weights.as_str())
                .with("predicted_pair", opt_str(r.predicted_pair, |p| p.as_str()))
                .with("predicted_c2", opt_str(r.predicted_c2, |p| p.as_str()))
                .with("samples", r.samples)
                .with("satisfiable", r.satisfiable)
                .with("pair_agree", r.pair_agree)
                .with("pair_disagree", r.pair_disagree)
                .with("c2_agree", r.c2_agree)
                .with("c2_disagree", r.c2_disagree)
                .with("c2_ties", r.c2_ties)
                .with("observed_comparable", r.observed_comparable)
                .with("observed_incomparable", r.observed_incomparable)
                .with("mean_overlap", r.mean_overlap)
                .with("mean_overlap_second", r.mean_overlap_second)
                .with("permuted", r.permuted)
                .with("certificate_ids", Cell::Texts(r.certificates.iter().map(|c| c.id.clone()).collect()))
        })
        .collect();
    Report { records, csv_columns: None }
}

fn select_rows(all: Vec<ScenarioRow>, args: &TablesArgs) -> Res<Vec<ScenarioRow>> {
    for id in &args.row_ids {
        if !all.iter().any(|r| &r.id == id) {
            return Err(input(format!("unknown row id '{id}'")));
        }
    }
    Ok(all
        .into_iter()
        .filter(|r| args.case.is_empty() || args.case.contains(&r.case))
        .filter(|r| args.row_ids.is_empty() || args.row_ids.contains(&r.id))
        .collect())
}

fn tables(args: &TablesArgs, workers: usize) -> Res<Report> {
    if args.samples == 0 {
        return Err(input("--samples must be at least 1"));
    }
    let rows = select_rows(load_rows(args.rows.as_deref())?, args)?;
    if rows.is_empty() {
        return Err(input("no rows selected"));
    }
    let reports = run_tables(&rows, args.samples, args.seed, mode(args.disjoint), workers)?;
    if let Some(dir) = &args.certificates {
        let certs = reports.iter().flat_map(|r| &r.certificates);
        write_certificates(dir, certs.map(|c| (c.id.clone(), emit_scenario_certificate(c))))?;
    }
    let report = table_report(&reports);
    if let Some(out) = &args.out {
        write_file(out, &report.csv())?;
    }
    Ok(report)
}

fn witness(args: &WitnessArgs) -> Res<Report> {
    let rows = load_rows(args.rows.as_deref())?;
    let row = rows.iter().find(|r| r.id == args.row).ok_or_else(|| input(format!("unknown row id '{}'", args.row)))?;
    let result = search_witness(row, args.budget, &RandomSource::new(args.seed, 0), mode(args.disjoint))?;
    let mut r = Record::new()
        .with("row", row.id.clone())
        .with("found", result.found())
        .with("samples_tried", result.samples_tried)
        .with("predicted_pair", opt_str(result.predicted_pair, |p| p.as_str()))
        .with("predicted_c2", opt_str(result.predicted_c2, |p| p.as_str()));
    if let Some(w) = &result.witness {
        let (inst, obs) = (&w.instance, &w.observation);
        r.push("observed_verdict", obs.verdict.as_str());
        r.push("observed_c2", obs.c2_order.as_str());
        r.push("pair_agrees", obs.pair_agrees(row));
        r.push("c2_agrees", obs.c2_agrees(row));
        r.push("c2_first", obs.c2_first);
        r.push("c2_second", obs.c2_second);
        r.push("overlap_first", obs.overlap_first);
        r.push("overlap_second", obs.overlap_second);
        r.push("permuted", obs.permuted);
        r.push("alpha", inst.alpha);
        r.push("beta", inst.beta);
        r.push("alpha_prime", inst.alpha_p);
        r.push("beta_prime", inst.beta_p);
        r.push("a", Cell::Nums(inst.a.clone()));
        r.push("b", Cell::Nums(inst.b.clone()));
        r.push("a_prime", Cell::Nums(inst.a_p.clone()));
        r.push("b_prime", Cell::Nums(inst.b_p.clone()));
        r.push("schmidt_first", Cell::Nums(obs.schmidt_first.probs().to_vec()));
        r.push("schmidt_second", Cell::Nums(obs.schmidt_second.probs().to_vec()));
    }
    Ok(Report::single(r))
}

fn replay(files: &[std::path::PathBuf], rows: Option<&Path>, cli: &Cli, out: &mut dyn Write) -> Res<()> {
    let mut rows_cache: Option<Vec<ScenarioRow>> = None;
    let mut records = Vec::new();
    let mut mismatched = 0;
    for path in files {
        let doc = parse_document(&read(path)?, ConfigOverrides::default()).map_err(|e| file_error(path, e))?;
        let outcome = match doc {
            Document::Bound(d) => replay_bound(&d)?.1,
            Document::Scenario(d) => {
                if rows_cache.is_none() {
                    rows_cache = Some(load_rows(rows)?);
                }
                replay_scenario(&d, rows_cache.as_deref().unwrap_or_default())?
            }
        };
        if !outcome.identical {
            mismatched += 1;
        }
        records.push(
            Record::new()
                .with("file", path.display().to_string())
                .with("id", outcome.id)
                .with("kind", outcome.kind)
                .with("identical", outcome.identical)
                .with("max_abs_diff", outcome.max_abs_diff)
                .with("detail", outcome.detail),
        );
    }
    emit(out, &Report { records, csv_columns: None }.render(cli.format))?;
    if mismatched > 0 {
        return Err(CliError::Numerical(format!("{mismatched} certificate(s) did not replay identically")));
    }
    Ok(())
}
