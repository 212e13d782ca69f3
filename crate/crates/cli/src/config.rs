//! Run configuration: a TOML file plus flag overrides, resolved into the
//! concrete values each command needs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hermann_core::angles::parse_angle_vector;
use hermann_core::catalog::named_point;
use hermann_core::Tolerances;

use crate::Failure;

/// Output format of tabular data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Optional values read from a `--config` TOML file. Flags override these.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub entry: Option<String>,
    pub params: Option<BTreeMap<String, usize>>,
    pub w: Option<String>,
    pub xi: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub n: Option<Vec<usize>>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("config: cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::config(format!("config: {e}")))
    }
}

/// Flags shared by the entry-based subcommands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// Catalog entry name (see `hermann catalog`).
    #[arg(long)]
    pub entry: Option<String>,

    /// Entry parameter, repeatable: `--param p=2`.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,

    /// Output directory. Default: $HERMANN_OUT_DIR, then `./out`.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Format of tabular output files.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Comparison tolerance for multiset and mean-curvature checks.
    #[arg(long)]
    pub tol: Option<f64>,

    /// TOML config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved configuration for one command run.
#[derive(Debug)]
pub struct Resolved {
    pub entry: Option<String>,
    pub params: BTreeMap<String, usize>,
    pub w_spec: Option<String>,
    pub xi_spec: Option<String>,
    pub out: PathBuf,
    pub format: Format,
    pub tol: Tolerances,
    pub grid: usize,
    pub n_list: Vec<usize>,
}

impl Resolved {
    /// Entry name, required by every command except the bare listing.
    pub fn entry_name(&self) -> Result<&str, Failure> {
        self.entry
            .as_deref()
            .ok_or_else(|| Failure::config("entry: no entry named (use --entry or a config file)".into()))
    }
}

fn parse_param(kv: &str) -> Result<(String, usize), Failure> {
    let (k, v) = kv
        .split_once('=')
        .ok_or_else(|| Failure::config(format!("param: expected K=V, got `{kv}`")))?;
    let value: usize = v
        .trim()
        .parse()
        .map_err(|_| Failure::config(format!("param: `{k}` needs a non-negative integer, got `{v}`")))?;
    Ok((k.trim().to_string(), value))
}

pub fn resolve(
    common: &CommonArgs,
    w_flag: Option<&str>,
    xi_flag: Option<&str>,
    grid_flag: Option<usize>,
    n_flag: Option<&str>,
) -> Result<Resolved, Failure> {
    let file = FileConfig::load(common.config.as_deref())?;

    let entry = common.entry.clone().or(file.entry);

    let mut params = file.params.unwrap_or_default();
    for kv in &common.params {
        let (k, v) = parse_param(kv)?;
        params.insert(k, v);
    }

    let w_spec = w_flag.map(str::to_string).or(file.w);
    let xi_spec = xi_flag.map(str::to_string).or(file.xi);

    let out = common
        .out
        .clone()
        .or(file.out)
        .or_else(|| std::env::var_os("HERMANN_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    let format = match common.format {
        Some(f) => f,
        None => match file.format.as_deref() {
            None => Format::Csv,
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => {
                return Err(Failure::config(format!(
                    "format: expected `csv` or `json`, got `{other}`"
                )))
            }
        },
    };

    let mut tol = Tolerances::default();
    if let Some(t) = common.tol.or(file.tol) {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::config(format!("tol: must be positive, got {t}")));
        }
        tol.vector_merge = t;
    }

    let grid = grid_flag.or(file.grid).unwrap_or(200);
    if grid == 0 {
        return Err(Failure::config("grid: must be at least 1".into()));
    }

    let n_list = match n_flag {
        Some(list) => {
            let mut ns = Vec::new();
            for tok in list.split(',') {
                let n: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Failure::config(format!("N: expected integers, got `{tok}`")))?;
                ns.push(n);
            }
            ns
        }
        None => file.n.unwrap_or_else(|| vec![50, 100, 200, 400]),
    };
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Failure::config("N: truncation orders must be positive".into()));
    }

    Ok(Resolved {
        entry,
        params,
        w_spec,
        xi_spec,
        out,
        format,
        tol,
        grid,
        n_list,
    })
}

/// Resolve a point/direction specification against the flat dimension.
///
/// Accepts a named point (`origin`, `pi8`, `pi4`) or comma-separated angle
/// expressions; a single angle is replicated across all coordinates.
pub fn resolve_point(field: &str, spec: &str, t_dim: usize) -> Result<Vec<f64>, Failure> {
    if let Some(p) = named_point(spec, t_dim) {
        return Ok(p);
    }
    let coords = parse_angle_vector(spec)
        .map_err(|e| Failure::config(format!("{field}: {e}")))?;
    if coords.len() == 1 && t_dim > 1 {
        return Ok(vec![coords[0]; t_dim]);
    }
    if coords.len() != t_dim {
        return Err(Failure::config(format!(
            "{field}: got {} coordinates, the flat has dimension {t_dim}",
            coords.len()
        )));
    }
    Ok(coords)
}
