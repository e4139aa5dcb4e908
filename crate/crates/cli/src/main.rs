//! Command-line front end: verification suites and CSV/JSON emission.
//!
//! Subcommands: verify | spectrum | states | classical | sweep.
//! Configuration is flat key=value (file via --config), with command-line
//! flags taking precedence. Exit codes: 0 all checks pass, 1 at least one
//! identity failed, 2 configuration error.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use curvops::classical::{flow, modulus_and_phase, observable};
use curvops::system::SystemKind;
use curvops::verify::{
    classical_suite, continuity_suite, kappa_suite, make_spec, quantum_suite,
    spectrum_with_oracle, VerifyConfig,
};
use curvops::{Error, Result};

mod emit;

#[derive(Debug, Clone)]
struct Options {
    system: SystemKind,
    cfg: VerifyConfig,
    tol: f64,
    out: PathBuf,
    n_max: u32,
    kappa_range: Option<(f64, f64)>,
}

fn usage() -> String {
    "usage: curvops <verify|spectrum|states|classical|sweep> [options]\n\
     options:\n\
       --system <kc|ho|sw|evans>     system family (default kc)\n\
       --kappa <list>                comma-separated curvatures (default -0.1,0,0.1)\n\
       --q <val> --omega <val>       couplings (defaults 2, 2)\n\
       --k1 <v> --k2 <v> --k3 <v>    centrifugal strengths (defaults 0.3, 0.4, 0.6)\n\
       --grid-n <n>                  collocation nodes (default 128)\n\
       --r-cut <val>                 radial cutoff override for kappa <= 0\n\
       --tol <val>                   spectrum comparison tolerance (default 1e-6)\n\
       --seed <n>                    random-point seed (default 1)\n\
       --t-end <val>                 classical trajectory length (default 100)\n\
       --n-max <n>                   levels in spectrum/states tables (default 5)\n\
       --kappa-range <a..b>          sweep range\n\
       --out <dir>                   output directory (default out)\n\
       --config <file>               flat key=value file; flags win\n"
        .into()
}

fn parse_args(args: &[String]) -> Result<(String, Options)> {
    if args.is_empty() {
        return Err(Error::Config(usage()));
    }
    let command = args[0].clone();
    let mut kv: HashMap<String, String> = HashMap::new();
    let mut i = 1;
    while i < args.len() {
        let key = args[i]
            .strip_prefix("--")
            .ok_or_else(|| Error::Config(format!("expected a --flag, got '{}'", args[i])))?;
        let val = args
            .get(i + 1)
            .ok_or_else(|| Error::Config(format!("flag --{key} needs a value")))?;
        kv.insert(key.to_string(), val.clone());
        i += 2;
    }
    if let Some(path) = kv.get("config").cloned() {
        let file_kv = parse_config_file(Path::new(&path))?;
        for (k, v) in file_kv {
            kv.entry(k).or_insert(v); // flags win
        }
    }

    let get = |key: &str| kv.get(key).cloned();
    let parse_f64 = |key: &str, default: f64| -> Result<f64> {
        match get(key) {
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number for --{key}: '{v}'"))),
            None => Ok(default),
        }
    };
    let parse_u = |key: &str, default: u64| -> Result<u64> {
        match get(key) {
            Some(v) => v
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad integer for --{key}: '{v}'"))),
            None => Ok(default),
        }
    };

    let system = SystemKind::parse(&get("system").unwrap_or_else(|| "kc".into()))?;
    let kappas: Vec<f64> = match get("kappa") {
        Some(list) => {
            let mut v = Vec::new();
            for tok in list.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                v.push(
                    tok.parse::<f64>()
                        .map_err(|_| Error::Config(format!("bad kappa '{tok}'")))?,
                );
            }
            v
        }
        None => vec![-0.1, 0.0, 0.1],
    };
    if kappas.is_empty() {
        return Err(Error::Config("empty kappa list".into()));
    }
    let kappa_range = match get("kappa-range") {
        Some(v) => {
            let (a, b) = v
                .split_once("..")
                .ok_or_else(|| Error::Config(format!("bad --kappa-range '{v}' (want a..b)")))?;
            Some((
                a.parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad range start '{a}'")))?,
                b.parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad range end '{b}'")))?,
            ))
        }
        None => None,
    };
    let cfg = VerifyConfig {
        kappas,
        q: parse_f64("q", 2.0)?,
        omega: parse_f64("omega", 2.0)?,
        k: (
            parse_f64("k1", 0.3)?,
            parse_f64("k2", 0.4)?,
            parse_f64("k3", 0.6)?,
        ),
        grid_n: parse_u("grid-n", 128)? as usize,
        r_cut: match get("r-cut") {
            Some(v) => Some(
                v.parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad --r-cut '{v}'")))?,
            ),
            None => None,
        },
        seed: parse_u("seed", 1)?,
        t_end: parse_f64("t-end", 100.0)?,
        bracket_points: parse_u("bracket-points", 100)? as usize,
    };
    cfg.validate()?;
    let tol = parse_f64("tol", 1e-6)?;
    if tol <= 0.0 {
        return Err(Error::Config(format!("tolerance must be positive: {tol}")));
    }
    let opts = Options {
        system,
        cfg,
        tol,
        out: PathBuf::from(get("out").unwrap_or_else(|| "out".into())),
        n_max: parse_u("n-max", 5)? as u32,
        kappa_range,
    };
    Ok((command, opts))
}

fn parse_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut kv = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            ))
        })?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(kv)
}

fn ensure_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(content.as_bytes())
        .map_err(|e| Error::Config(format!("write {}: {e}", path.display())))
}

fn kappa_tag(kappa: f64) -> String {
    format!("{kappa}").replace('-', "m").replace('.', "p")
}

fn cmd_verify(opts: &Options) -> Result<bool> {
    ensure_out(&opts.out)?;
    let mut rep = kappa_suite();
    rep.merge(quantum_suite(opts.system, &opts.cfg)?);
    rep.merge(classical_suite(opts.system, &opts.cfg)?);
    rep.merge(continuity_suite(opts.system, &opts.cfg)?);
    let path = opts.out.join(format!("report_{}.json", opts.system.name()));
    write_file(&path, &rep.to_json())?;
    println!(
        "{}: {} identities checked, {} failed -> {}",
        opts.system.name(),
        rep.rows.len(),
        rep.failed().len(),
        path.display()
    );
    for row in rep.failed() {
        println!(
            "FAIL {} residual {:.3e} tol {:.1e}",
            row.identity, row.residual, row.tol
        );
    }
    for f in &rep.findings {
        println!("note {}: {}", f.label, f.detail);
    }
    Ok(rep.pass())
}

fn cmd_spectrum(opts: &Options) -> Result<bool> {
    ensure_out(&opts.out)?;
    let mut all_ok = true;
    for &kappa in &opts.cfg.kappas {
        let spec = make_spec(opts.system, kappa, &opts.cfg)?;
        let rows = spectrum_with_oracle(&spec, opts.n_max)?;
        let mut csv = String::from("n,E_analytic,E_numeric,|\u{394}|,admissible\n");
        for row in &rows {
            let (numeric, delta) = match row.numeric {
                Some(v) => {
                    let d = (v - row.analytic).abs();
                    if row.admissible && d > opts.tol {
                        all_ok = false;
                    }
                    (format!("{v:.12e}"), format!("{d:.3e}"))
                }
                None => (String::new(), String::new()),
            };
            csv.push_str(&format!(
                "{},{:.12e},{},{},{}\n",
                row.n, row.analytic, numeric, delta, row.admissible
            ));
        }
        let path = opts.out.join(format!(
            "spectrum_{}_kappa{}.csv",
            opts.system.name(),
            kappa_tag(kappa)
        ));
        write_file(&path, &csv)?;
        println!("wrote {}", path.display());
    }
    Ok(all_ok)
}

fn cmd_states(opts: &Options) -> Result<bool> {
    ensure_out(&opts.out)?;
    for &kappa in &opts.cfg.kappas {
        let spec = make_spec(opts.system, kappa, &opts.cfg)?;
        let path = opts.out.join(format!(
            "states_{}_kappa{}.csv",
            opts.system.name(),
            kappa_tag(kappa)
        ));
        write_file(&path, &emit::states_csv(&spec, opts.n_max.min(3))?)?;
        println!("wrote {}", path.display());
        if spec.octant_locked() {
            let path = opts.out.join(format!(
                "states_angular_{}_kappa{}.csv",
                opts.system.name(),
                kappa_tag(kappa)
            ));
            write_file(&path, &emit::angular_states_csv(&spec)?)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(true)
}

fn cmd_classical(opts: &Options) -> Result<bool> {
    ensure_out(&opts.out)?;
    let mut all_ok = true;
    for &kappa in &opts.cfg.kappas {
        let spec = make_spec(opts.system, kappa, &opts.cfg)?;
        let start = emit::bounded_start(&spec);
        let traj = flow(&spec, &start, opts.cfg.t_end, 0.001, 100)?;
        let sp = observable(&spec, "S+_rtheta")?;
        let sm = observable(&spec, "S-_rtheta")?;
        let (dp, phases_p) = modulus_and_phase(&spec, &sp, &traj);
        let (dm, phases_m) = modulus_and_phase(&spec, &sm, &traj);
        if dp > 1e-5 || dm > 1e-5 || traj.energy_drift > 1e-5 {
            all_ok = false;
        }
        let mut csv = String::from(
            "t,r,p_r,theta,p_theta,phi,p_phi,H,|S+|,phase_S+,|S-|,phase_S-\n",
        );
        let h = observable(&spec, "H")?;
        let spf = sp.frozen(&spec, &traj.points[0]);
        let smf = sm.frozen(&spec, &traj.points[0]);
        for (i, (t, p)) in traj.times.iter().zip(&traj.points).enumerate() {
            let hv = h.value(&spec, p).re;
            let vp = spf(p);
            let vm = smf(p);
            csv.push_str(&format!(
                "{t:.6},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                p.r(),
                p.p_r(),
                p.theta(),
                p.p_theta(),
                p.phi(),
                p.p_phi(),
                hv,
                vp.norm(),
                phases_p[i],
                vm.norm(),
                phases_m[i],
            ));
        }
        let path = opts.out.join(format!(
            "classical_{}_kappa{}.csv",
            opts.system.name(),
            kappa_tag(kappa)
        ));
        write_file(&path, &csv)?;
        println!(
            "wrote {} (energy drift {:.2e}, |S+| drift {:.2e})",
            path.display(),
            traj.energy_drift,
            dp
        );
    }
    Ok(all_ok)
}

fn cmd_sweep(opts: &Options) -> Result<bool> {
    ensure_out(&opts.out)?;
    let (lo, hi) = opts.kappa_range.unwrap_or((1e-7, 1.0));
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Config(format!(
            "sweep needs 0 < a < b, got {lo}..{hi}"
        )));
    }
    let steps = 13usize;
    let mut csv = String::from("kappa,coefficient_residual\n");
    let mut prev = 0.0;
    let mut monotone = true;
    for i in 0..steps {
        let f = i as f64 / (steps - 1) as f64;
        let kappa = lo * (hi / lo).powf(f);
        let res = emit::coefficient_continuity(opts.system, kappa, &opts.cfg)?;
        if res + 1e-12 < prev {
            monotone = false;
        }
        prev = res;
        csv.push_str(&format!("{kappa:.6e},{res:.6e}\n"));
    }
    let path = opts.out.join(format!("sweep_{}.csv", opts.system.name()));
    write_file(&path, &csv)?;
    println!("wrote {} (monotone: {monotone})", path.display());
    Ok(true)
}

fn run() -> Result<bool> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (command, opts) = parse_args(&args)?;
    match command.as_str() {
        "verify" => cmd_verify(&opts),
        "spectrum" => cmd_spectrum(&opts),
        "states" => cmd_states(&opts),
        "classical" => cmd_classical(&opts),
        "sweep" => cmd_sweep(&opts),
        other => Err(Error::Config(format!(
            "unknown command '{other}'\n{}",
            usage()
        ))),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failures detected");
            ExitCode::from(1)
        }
        Err(Error::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
