//! Flat key-value experiment configs.
//!
//! ```text
//! [experiment]
//! dimension = 10
//! runs = 25
//! budget_multiplier = 10000
//! master_seed = 42
//! error_floor = 1e-8
//! diagnostics = off
//!
//! [functions]
//! sphere shifted
//! rastrigin shifted rotated
//!
//! [[algorithm]]
//! name = de
//! baseline = de
//!
//! [[algorithm]]
//! baseline = de
//! scss = on
//! m = 2
//! scheme = scheme1
//! gd = 1.0
//! ```
//!
//! Unknown keys are rejected. Omitted algorithm parameters fall back to the
//! published defaults of each baseline; omitted selection settings default
//! to Scheme 1 with GD = 1 for the classic baselines and Scheme 2 for the
//! adaptive DEs, with M = 2.

use std::collections::HashMap;

use scss_core::baselines::de::DeParams;
use scss_core::baselines::es::EsParams;
use scss_core::baselines::jade::JadeParams;
use scss_core::baselines::lshade::LshadeParams;
use scss_core::baselines::pso::PsoParams;
use scss_core::baselines::shade::ShadeParams;
use scss_core::bench::{AlgorithmConfig, BaseFunction, BaselineSpec, ExperimentSpec, FunctionSpec};
use scss_core::scss::{ScssConfig, SelectionScheme};

pub const DESK_DIMENSION: usize = 10;
pub const DESK_RUNS: usize = 25;

#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line: Some(line), message: message.into() })
}

fn err_global<T>(message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line: None, message: message.into() })
}

#[derive(Debug, Default)]
struct RawBlock {
    entries: Vec<(usize, String, String)>,
}

impl RawBlock {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        let idx = self.entries.iter().position(|(_, k, _)| k == key)?;
        let (line, _, value) = self.entries.remove(idx);
        Some((line, value))
    }

    fn reject_leftovers(&self, context: &str) -> Result<(), ConfigError> {
        if let Some((line, key, _)) = self.entries.first() {
            return err(*line, format!("unknown key `{key}` in {context}"));
        }
        Ok(())
    }
}

/// Parse the config text into an experiment spec.
pub fn parse_config(text: &str) -> Result<ExperimentSpec<f64>, ConfigError> {
    let mut experiment = RawBlock::default();
    let mut functions: Vec<(usize, String)> = Vec::new();
    let mut algorithms: Vec<RawBlock> = Vec::new();

    #[derive(PartialEq)]
    enum Section {
        None,
        Experiment,
        Functions,
        Algorithm,
    }
    let mut section = Section::None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[experiment]" => section = Section::Experiment,
            "[functions]" => section = Section::Functions,
            "[[algorithm]]" => {
                algorithms.push(RawBlock::default());
                section = Section::Algorithm;
            }
            _ if line.starts_with('[') => {
                return err(line_no, format!("unknown section `{line}`"));
            }
            _ => match section {
                Section::None => return err(line_no, "content before any section header"),
                Section::Functions => functions.push((line_no, line.to_string())),
                Section::Experiment | Section::Algorithm => {
                    let Some((key, value)) = line.split_once('=') else {
                        return err(line_no, "expected `key = value`");
                    };
                    let entry =
                        (line_no, key.trim().to_string(), value.trim().to_string());
                    if section == Section::Experiment {
                        experiment.entries.push(entry);
                    } else {
                        algorithms.last_mut().expect("inside a block").entries.push(entry);
                    }
                }
            },
        }
    }

    let experiment = build_experiment(experiment)?;
    let functions = build_functions(functions)?;
    if functions.is_empty() {
        return err_global("no functions configured");
    }
    if algorithms.is_empty() {
        return err_global("no [[algorithm]] blocks configured");
    }
    let mut configs = Vec::with_capacity(algorithms.len());
    let mut seen_names: HashMap<String, ()> = HashMap::new();
    for block in algorithms {
        let config = build_algorithm(block, experiment.dimension)?;
        if seen_names.insert(config.name.clone(), ()).is_some() {
            return err_global(format!("duplicate algorithm name `{}`", config.name));
        }
        configs.push(config);
    }

    Ok(ExperimentSpec {
        algorithms: configs,
        functions,
        dim: experiment.dimension,
        runs: experiment.runs,
        budget_multiplier: experiment.budget_multiplier,
        error_floor: experiment.error_floor,
        master_seed: experiment.master_seed,
        diagnostics: experiment.diagnostics,
    })
}

struct ExperimentKeys {
    dimension: usize,
    runs: usize,
    budget_multiplier: u64,
    master_seed: u64,
    error_floor: f64,
    diagnostics: bool,
}

fn parse_value<T: std::str::FromStr>(
    line: usize,
    key: &str,
    value: &str,
) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError { line: Some(line), message: format!("invalid value for `{key}`: `{value}`") })
}

fn parse_switch(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => err(line, format!("`{key}` expects on/off, found `{value}`")),
    }
}

fn build_experiment(mut block: RawBlock) -> Result<ExperimentKeys, ConfigError> {
    let mut keys = ExperimentKeys {
        dimension: DESK_DIMENSION,
        runs: DESK_RUNS,
        budget_multiplier: 10_000,
        master_seed: 42,
        error_floor: 1e-8,
        diagnostics: false,
    };
    if let Some((line, v)) = block.take("dimension") {
        keys.dimension = parse_value(line, "dimension", &v)?;
    }
    if let Some((line, v)) = block.take("runs") {
        keys.runs = parse_value(line, "runs", &v)?;
    }
    if let Some((line, v)) = block.take("budget_multiplier") {
        keys.budget_multiplier = parse_value(line, "budget_multiplier", &v)?;
    }
    if let Some((line, v)) = block.take("master_seed") {
        keys.master_seed = parse_value(line, "master_seed", &v)?;
    }
    if let Some((line, v)) = block.take("error_floor") {
        keys.error_floor = parse_value(line, "error_floor", &v)?;
    }
    if let Some((line, v)) = block.take("diagnostics") {
        keys.diagnostics = parse_switch(line, "diagnostics", &v)?;
    }
    block.reject_leftovers("[experiment]")?;
    Ok(keys)
}

fn build_functions(lines: Vec<(usize, String)>) -> Result<Vec<FunctionSpec>, ConfigError> {
    let mut specs = Vec::with_capacity(lines.len());
    for (line_no, line) in lines {
        let mut tokens = line.split_whitespace();
        let name = tokens.next().expect("non-empty line");
        let Some(base) = BaseFunction::from_name(name) else {
            return err(line_no, format!("unknown function `{name}`"));
        };
        let mut shifted = false;
        let mut rotated = false;
        for token in tokens {
            match token {
                "shifted" => shifted = true,
                "rotated" => rotated = true,
                _ => return err(line_no, format!("unknown function flag `{token}`")),
            }
        }
        specs.push(FunctionSpec { base, shifted, rotated });
    }
    Ok(specs)
}

fn build_algorithm(
    mut block: RawBlock,
    dimension: usize,
) -> Result<AlgorithmConfig<f64>, ConfigError> {
    let Some((baseline_line, baseline_name)) = block.take("baseline") else {
        let line = block.entries.first().map(|(l, _, _)| *l).unwrap_or(0);
        return err(line, "[[algorithm]] block is missing `baseline`");
    };

    let scss_enabled = match block.take("scss") {
        Some((line, v)) => parse_switch(line, "scss", &v)?,
        None => false,
    };

    let baseline = match baseline_name.as_str() {
        "de" => {
            let mut params = DeParams::default();
            if let Some((line, v)) = block.take("np") {
                params.np = parse_value(line, "np", &v)?;
            }
            if let Some((line, v)) = block.take("f") {
                params.f = parse_value(line, "f", &v)?;
            }
            if let Some((line, v)) = block.take("cr") {
                params.cr = parse_value(line, "cr", &v)?;
            }
            BaselineSpec::De(params)
        }
        "es" => {
            let mut params = EsParams::default();
            if let Some((line, v)) = block.take("mu") {
                params.mu = parse_value(line, "mu", &v)?;
            }
            if let Some((line, v)) = block.take("lambda") {
                params.lambda = parse_value(line, "lambda", &v)?;
            }
            if let Some((line, v)) = block.take("chi") {
                params.chi = parse_value(line, "chi", &v)?;
            }
            if let Some((line, v)) = block.take("tau") {
                params.tau = parse_value(line, "tau", &v)?;
            }
            if let Some((line, v)) = block.take("tau_prime") {
                params.tau_prime = parse_value(line, "tau_prime", &v)?;
            }
            BaselineSpec::Es(params)
        }
        "pso" => {
            let mut params = PsoParams::default();
            if let Some((line, v)) = block.take("np") {
                params.np = parse_value(line, "np", &v)?;
            }
            if let Some((line, v)) = block.take("w") {
                params.w = parse_value(line, "w", &v)?;
            }
            if let Some((line, v)) = block.take("c1") {
                params.c1 = parse_value(line, "c1", &v)?;
            }
            if let Some((line, v)) = block.take("c2") {
                params.c2 = parse_value(line, "c2", &v)?;
            }
            if let Some((line, v)) = block.take("vmax_scale") {
                params.vmax_scale = parse_value(line, "vmax_scale", &v)?;
            }
            BaselineSpec::Pso(params)
        }
        "jade" => {
            let mut params = JadeParams::default();
            if let Some((line, v)) = block.take("np") {
                params.np = parse_value(line, "np", &v)?;
            }
            if let Some((line, v)) = block.take("p") {
                params.p = parse_value(line, "p", &v)?;
            }
            if let Some((line, v)) = block.take("c") {
                params.c = parse_value(line, "c", &v)?;
            }
            BaselineSpec::Jade(params)
        }
        "shade" => {
            let mut params = ShadeParams::default();
            if let Some((line, v)) = block.take("np") {
                params.np = parse_value(line, "np", &v)?;
            }
            if let Some((line, v)) = block.take("h") {
                params.h = Some(parse_value(line, "h", &v)?);
            }
            BaselineSpec::Shade(params)
        }
        "lshade" => {
            let mut params = LshadeParams::default();
            if let Some((line, v)) = block.take("np_init") {
                params.np_init = Some(parse_value(line, "np_init", &v)?);
            }
            if let Some((line, v)) = block.take("np_min") {
                params.np_min = parse_value(line, "np_min", &v)?;
            }
            if let Some((line, v)) = block.take("h") {
                params.h = parse_value(line, "h", &v)?;
            }
            if let Some((line, v)) = block.take("p") {
                params.p = parse_value(line, "p", &v)?;
            }
            if let Some((line, v)) = block.take("arc_rate") {
                params.archive_rate = parse_value(line, "arc_rate", &v)?;
            }
            let _ = dimension; // np_init defaults to 18 * dimension downstream
            BaselineSpec::Lshade(params)
        }
        other => return err(baseline_line, format!("unknown baseline `{other}`")),
    };

    let scheme_entry = block.take("scheme");
    let gd_entry = block.take("gd");
    let m_entry = block.take("m");
    let scss = if scss_enabled {
        let m = match m_entry {
            Some((line, v)) => {
                let m: usize = parse_value(line, "m", &v)?;
                if m == 0 {
                    return err(line, "`m` must be at least 1");
                }
                m
            }
            None => 2,
        };
        let scheme = match scheme_entry {
            Some((line, v)) => match v.as_str() {
                "scheme1" => {
                    let gd = match gd_entry {
                        Some((gd_line, gd_v)) => {
                            let gd: f64 = parse_value(gd_line, "gd", &gd_v)?;
                            if !(0.0..=1.0).contains(&gd) {
                                return err(gd_line, "`gd` must lie in [0, 1]");
                            }
                            gd
                        }
                        None => 1.0,
                    };
                    SelectionScheme::Scheme1 { gd }
                }
                scheme_name @ ("scheme2" | "oppo" | "meval") => {
                    if let Some((gd_line, _)) = gd_entry {
                        return err(gd_line, format!("`gd` only applies to scheme1, not {scheme_name}"));
                    }
                    match scheme_name {
                        "scheme2" => SelectionScheme::Scheme2,
                        "oppo" => SelectionScheme::VariantOppo,
                        _ => SelectionScheme::VariantMeval,
                    }
                }
                other => return err(line, format!("unknown scheme `{other}`")),
            },
            None => {
                // published defaults: classics take Scheme 1 / GD = 1,
                // adaptive DEs take Scheme 2
                match baseline_name.as_str() {
                    "de" | "es" | "pso" => {
                        let gd = match gd_entry {
                            Some((gd_line, gd_v)) => {
                                let gd: f64 = parse_value(gd_line, "gd", &gd_v)?;
                                if !(0.0..=1.0).contains(&gd) {
                                    return err(gd_line, "`gd` must lie in [0, 1]");
                                }
                                gd
                            }
                            None => 1.0,
                        };
                        SelectionScheme::Scheme1 { gd }
                    }
                    _ => {
                        if let Some((gd_line, _)) = gd_entry {
                            return err(gd_line, "`gd` requires `scheme = scheme1`");
                        }
                        SelectionScheme::Scheme2
                    }
                }
            }
        };
        Some(ScssConfig::new(m, scheme))
    } else {
        for (entry, key) in [(&scheme_entry, "scheme"), (&gd_entry, "gd"), (&m_entry, "m")] {
            if let Some((line, _)) = entry {
                return err(*line, format!("`{key}` requires `scss = on`"));
            }
        }
        None
    };

    let name = match block.take("name") {
        Some((_, v)) => v,
        None => {
            if scss.is_some() {
                format!("scss-{baseline_name}")
            } else {
                baseline_name.clone()
            }
        }
    };

    block.reject_leftovers(&format!("[[algorithm]] `{name}`"))?;
    Ok(AlgorithmConfig { name, baseline, scss })
}
