use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Arg, Command};
use qpendulum::dynamics::{Method, PropagationConfig};
use qpendulum::model::{coherent_momentum_width, LatticeParams, REVIVAL_DISPLACEMENT};
use qpendulum::perturbation::ModelLabel;

use crate::error::{usage, CliError, CliResult};

pub struct KeySpec {
    pub name: &'static str,
    pub value: &'static str,
    pub help: &'static str,
}

/// Every option, usable as `--name value` or as `name = value` in a
/// config file.
pub const KEYS: &[KeySpec] = &[
    KeySpec {
        name: "v0",
        value: "V0",
        help: "Lattice depth V0 [default 10]",
    },
    KeySpec {
        name: "kbar",
        value: "KBAR",
        help: "Scaled Planck constant [default 0.5]",
    },
    KeySpec {
        name: "q",
        value: "Q",
        help: "Mathieu parameter V0/kbar^2; needs --kbar unless only q matters",
    },
    KeySpec {
        name: "q-range",
        value: "START:STOP:STEP",
        help: "Inclusive q sweep",
    },
    KeySpec {
        name: "nmax",
        value: "N",
        help: "Highest level, or number of bands for `bands`",
    },
    KeySpec {
        name: "tol",
        value: "TOL",
        help: "Convergence tolerance of characteristic values [default 1e-10]",
    },
    KeySpec {
        name: "nu-points",
        value: "N",
        help: "Quasimomentum samples in [0, 1] [default 41]",
    },
    KeySpec {
        name: "grid-points",
        value: "N",
        help: "Grid points, a power of two [default 1024]",
    },
    KeySpec {
        name: "wells",
        value: "L",
        help: "Wells in the periodic domain, even [default 2]",
    },
    KeySpec {
        name: "dt",
        value: "DT",
        help: "Time step [default T_cl/200]",
    },
    KeySpec {
        name: "tmax",
        value: "T",
        help: "Final time [default 1.2*8pi/kbar]",
    },
    KeySpec {
        name: "x0",
        value: "X0",
        help: "Packet center",
    },
    KeySpec {
        name: "p0",
        value: "P0",
        help: "Packet mean momentum [default 0]",
    },
    KeySpec {
        name: "dp",
        value: "DP",
        help: "Packet momentum width",
    },
    KeySpec {
        name: "method",
        value: "METHOD",
        help: "split-operator or eigenbasis",
    },
    KeySpec {
        name: "model",
        value: "MODEL",
        help: "harmonic, quartic, sixtic, octic or numeric",
    },
    KeySpec {
        name: "nbar",
        value: "START:STOP[:STEP]",
        help: "Mean quantum numbers [default 0:7]",
    },
    KeySpec {
        name: "threshold",
        value: "T",
        help: "Peak threshold on |A|^2 [default 0.7]",
    },
    KeySpec {
        name: "density-out",
        value: "FILE",
        help: "Also write the density map (t,x,density)",
    },
    KeySpec {
        name: "out",
        value: "FILE",
        help: "Output CSV [default stdout]",
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Spectrum,
    Bands,
    Evolve,
    Revivals,
    Project,
    Timescales,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Spectrum,
        Subcommand::Bands,
        Subcommand::Evolve,
        Subcommand::Revivals,
        Subcommand::Project,
        Subcommand::Timescales,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Spectrum => "spectrum",
            Subcommand::Bands => "bands",
            Subcommand::Evolve => "evolve",
            Subcommand::Revivals => "revivals",
            Subcommand::Project => "project",
            Subcommand::Timescales => "timescales",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Subcommand::Spectrum => "Mathieu characteristic values a_n, b_n",
            Subcommand::Bands => "Bloch bands over the quasimomentum",
            Subcommand::Evolve => "Autocorrelation of a propagated wavepacket",
            Subcommand::Revivals => "Peaks, periods and revival candidates of |A|^2",
            Subcommand::Project => "Projection of approximate states onto exact bands",
            Subcommand::Timescales => "Classical, revival and super-revival times",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Subcommand::Spectrum => &["v0", "kbar", "q", "q-range", "nmax", "tol", "out"],
            Subcommand::Bands => &["v0", "kbar", "q", "nmax", "nu-points", "out"],
            Subcommand::Evolve => &[
                "v0",
                "kbar",
                "q",
                "grid-points",
                "wells",
                "dt",
                "tmax",
                "x0",
                "p0",
                "dp",
                "method",
                "density-out",
                "out",
            ],
            Subcommand::Revivals => &[
                "v0",
                "kbar",
                "q",
                "grid-points",
                "wells",
                "dt",
                "tmax",
                "x0",
                "p0",
                "dp",
                "method",
                "model",
                "threshold",
                "out",
            ],
            Subcommand::Project => &["v0", "kbar", "q", "grid-points", "wells", "nmax", "out"],
            Subcommand::Timescales => &["v0", "kbar", "q", "model", "nbar", "out"],
        }
    }

    /// Commands whose output depends only on `q`.
    fn q_only(self) -> bool {
        matches!(self, Subcommand::Spectrum | Subcommand::Bands)
    }
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Subcommand,
    /// Depth and `k̄`; absent for `q`-only commands given just `q`.
    pub params: Option<LatticeParams>,
    pub q_values: Vec<f64>,
    pub n_max: usize,
    pub tol: f64,
    pub nu_points: usize,
    pub grid_points: usize,
    pub wells: usize,
    pub dt: f64,
    pub t_max: f64,
    pub x0: f64,
    pub p0: f64,
    pub dp: f64,
    pub method: Method,
    pub model: Option<ModelLabel>,
    pub n_bar: Vec<f64>,
    pub threshold: f64,
    pub out: Option<PathBuf>,
    pub density_out: Option<PathBuf>,
}

pub enum Parsed {
    Run(RunConfig),
    /// Help or version text, printed with exit status 0.
    Info(String),
}

pub fn command() -> Command {
    let mut root = Command::new("qpendulum")
        .about("Quantum pendulum spectra, wavepacket dynamics and revivals")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for sub in Subcommand::ALL {
        let mut cmd = Command::new(sub.name()).about(sub.about()).arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("Read `key = value` lines; flags take precedence"),
        );
        for key in sub.keys() {
            let spec = KEYS.iter().find(|k| k.name == *key).expect("key table");
            cmd = cmd.arg(
                Arg::new(spec.name)
                    .long(spec.name)
                    .value_name(spec.value)
                    .help(spec.help)
                    .allow_negative_numbers(true),
            );
        }
        root = root.subcommand(cmd);
    }
    root
}

/// `key = value` lines with `#` comments. Keys may use `_` for `-`.
pub fn parse_config_file(text: &str, origin: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{origin}:{}: expected `key = value`, got '{line}'",
                i + 1
            ))
        })?;
        let key = key.trim().replace('_', "-");
        if !KEYS.iter().any(|k| k.name == key) {
            return Err(usage(format!("{origin}:{}: unknown key '{key}'", i + 1)));
        }
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(usage(format!("{origin}:{}: duplicate key '{key}'", i + 1)));
        }
    }
    Ok(out)
}

pub fn parse_config<I, S>(argv: I) -> CliResult<Parsed>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Ok(Parsed::Info(e.to_string()))
                }
                _ => Err(usage(
                    e.to_string()
                        .lines()
                        .next()
                        .unwrap_or("invalid arguments")
                        .trim_start_matches("error: ")
                        .to_string(),
                )),
            };
        }
    };
    let (name, sub_m) = matches.subcommand().expect("subcommand required");
    let sub = Subcommand::ALL
        .into_iter()
        .find(|s| s.name() == name)
        .expect("registered subcommand");

    let mut values = BTreeMap::new();
    if let Some(path) = sub_m.get_one::<String>("config") {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config '{path}': {e}")))?;
        values = parse_config_file(&text, path)?;
    }
    for key in sub.keys() {
        if let Some(v) = sub_m.get_one::<String>(key) {
            values.insert(key.to_string(), v.clone());
        }
    }
    Ok(Parsed::Run(resolve(sub, &values)?))
}

struct Values<'a> {
    map: &'a BTreeMap<String, String>,
    sub: Subcommand,
}

impl Values<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        // Keys that do not apply to this command are ignored, so one file can
        // serve several commands.
        if self.sub.keys().contains(&key) {
            self.map.get(key).map(String::as_str)
        } else {
            None
        }
    }

    fn f64(&self, key: &str) -> CliResult<Option<f64>> {
        self.raw(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| {
                        usage(format!(
                            "invalid value '{v}' for --{key}: expected a number"
                        ))
                    })
            })
            .transpose()
    }

    fn usize(&self, key: &str) -> CliResult<Option<usize>> {
        self.raw(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| {
                    usage(format!(
                        "invalid value '{v}' for --{key}: expected a non-negative integer"
                    ))
                })
            })
            .transpose()
    }

    fn positive(&self, key: &str) -> CliResult<Option<f64>> {
        match self.f64(key)? {
            Some(x) if x <= 0.0 => Err(usage(format!(
                "invalid value '{x}' for --{key}: must be positive"
            ))),
            other => Ok(other),
        }
    }
}

fn parse_range(key: &str, text: &str, default_step: Option<f64>) -> CliResult<Vec<f64>> {
    let bad = || {
        usage(format!(
            "invalid value '{text}' for --{key}: expected START:STOP[:STEP]"
        ))
    };
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let (start, stop, step) = match (parts.as_slice(), default_step) {
        ([x], _) => return Ok(vec![*x]),
        ([a, b], Some(s)) => (*a, *b, s),
        ([a, b, s], _) => (*a, *b, *s),
        _ => return Err(bad()),
    };
    if step <= 0.0 || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(usage(format!("--{key} '{text}' has too many points")));
    }
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

fn resolve(sub: Subcommand, map: &BTreeMap<String, String>) -> CliResult<RunConfig> {
    let v = Values { map, sub };
    let v0 = v.positive("v0")?;
    let kbar = v.positive("kbar")?;
    let q = v.f64("q")?;
    let q_range = v.raw("q-range");

    if let Some(q) = q {
        if q < 0.0 || (q == 0.0 && !sub.q_only()) {
            return Err(usage(format!("invalid value '{q}' for --q: out of range")));
        }
    }
    if v0.is_some() && (q.is_some() || q_range.is_some()) {
        return Err(usage(
            "conflicting parameters: give either --v0 or --q/--q-range",
        ));
    }
    if q.is_some() && q_range.is_some() {
        return Err(usage(
            "conflicting parameters: give either --q or --q-range",
        ));
    }
    if q.is_some() && kbar.is_none() && !sub.q_only() {
        return Err(usage("kbar required with q"));
    }

    let (params, q_values) = match (q, q_range) {
        (Some(0.0), _) => (None, vec![0.0]),
        (Some(q), _) => {
            let params = match kbar {
                Some(k) => Some(LatticeParams::from_q(q, k)?),
                None => None,
            };
            (params, vec![q])
        }
        (None, Some(r)) => {
            let qs = parse_range("q-range", r, None)?;
            if qs.iter().any(|&q| q < 0.0) {
                return Err(usage(format!(
                    "invalid value '{r}' for --q-range: q must be >= 0"
                )));
            }
            (None, qs)
        }
        (None, None) => {
            let p = LatticeParams::new(v0.unwrap_or(10.0), kbar.unwrap_or(0.5))?;
            (Some(p), vec![p.q()])
        }
    };

    let n_max = v.usize("nmax")?.unwrap_or(match sub {
        Subcommand::Spectrum => 10,
        Subcommand::Bands => 5,
        _ => 7,
    });
    match sub {
        Subcommand::Spectrum | Subcommand::Bands if !(1..=200).contains(&n_max) => {
            return Err(usage(format!(
                "invalid value '{n_max}' for --nmax: must be in 1..=200"
            )))
        }
        Subcommand::Project if n_max > 60 => {
            return Err(usage(format!(
                "invalid value '{n_max}' for --nmax: must be at most 60"
            )))
        }
        _ => {}
    }
    let tol = v.positive("tol")?.unwrap_or(1e-10);
    let nu_points = v.usize("nu-points")?.unwrap_or(41);
    if nu_points < 2 {
        return Err(usage(format!(
            "invalid value '{nu_points}' for --nu-points: must be at least 2"
        )));
    }
    let grid_points = v.usize("grid-points")?.unwrap_or(1024);
    if !(grid_points.is_power_of_two() && (64..=1 << 20).contains(&grid_points)) {
        return Err(usage(format!(
            "invalid value '{grid_points}' for --grid-points: must be a power of two in 64..=1048576"
        )));
    }
    let wells = v.usize("wells")?.unwrap_or(2);
    if wells < 2 || wells % 2 != 0 || grid_points % wells != 0 {
        return Err(usage(format!(
            "invalid value '{wells}' for --wells: must be even, >= 2 and divide --grid-points"
        )));
    }

    let displaced = sub == Subcommand::Revivals;
    let (dt, t_max, dp) = match params {
        Some(p) => (
            PropagationConfig::default_dt(&p),
            PropagationConfig::default_revival_t_max(&p),
            if displaced {
                coherent_momentum_width(&p)
            } else {
                0.5
            },
        ),
        None => (0.0, 0.0, 0.5),
    };
    let dt = v.positive("dt")?.unwrap_or(dt);
    let t_max = v.positive("tmax")?.unwrap_or(t_max);
    let x0 = v
        .f64("x0")?
        .unwrap_or(if displaced { REVIVAL_DISPLACEMENT } else { 0.0 });
    let p0 = v.f64("p0")?.unwrap_or(0.0);
    let dp = v.positive("dp")?.unwrap_or(dp);
    let method = match v.raw("method") {
        Some(m) => m.parse::<Method>().map_err(|_| {
            usage(format!(
                "invalid value '{m}' for --method: expected split-operator or eigenbasis"
            ))
        })?,
        None if displaced => Method::Eigenbasis,
        None => Method::SplitOperator,
    };
    let model = match v.raw("model") {
        Some(m) => Some(m.parse::<ModelLabel>().map_err(|_| {
            usage(format!(
                "invalid value '{m}' for --model: expected harmonic, quartic, sixtic, octic or numeric"
            ))
        })?),
        None if displaced => Some(ModelLabel::Quartic),
        None => None,
    };
    let n_bar = parse_range("nbar", v.raw("nbar").unwrap_or("0:7"), Some(1.0))?;
    if n_bar.iter().any(|&n| n < 0.0) {
        return Err(usage("invalid value for --nbar: must be >= 0"));
    }
    let threshold = v.f64("threshold")?.unwrap_or(0.7);
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(usage(format!(
            "invalid value '{threshold}' for --threshold: must be in (0, 1]"
        )));
    }

    Ok(RunConfig {
        command: sub,
        params,
        q_values,
        n_max,
        tol,
        nu_points,
        grid_points,
        wells,
        dt,
        t_max,
        x0,
        p0,
        dp,
        method,
        model,
        n_bar,
        threshold,
        out: v.raw("out").map(PathBuf::from),
        density_out: v.raw("density-out").map(PathBuf::from),
    })
}

impl RunConfig {
    /// Lattice parameters, required by every command except `spectrum` and
    /// `bands`.
    pub fn lattice(&self) -> CliResult<LatticeParams> {
        self.params.ok_or_else(|| usage("kbar required with q"))
    }
}
