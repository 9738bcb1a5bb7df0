//! Problem files: a line-oriented text format and a JSON equivalent.
//!
//! ```text
//! vars: x1 x2 x3
//! min: 2*x2^4 + x3^4 - 4*x1^2
//! eq: -1*x2*x3 - x3^2 + 2*x1
//! point: 0 0 0
//! ```
//!
//! `ineq: h` means `h ≥ 0`. `max:` and `objective:` are accepted in place of
//! `min:`; the classification does not depend on the declared sense. Optional
//! `seed:`, `radius:` and `max-retries:` lines override the defaults.

use serde::{Deserialize, Serialize};

use crate::classify::Config;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_rational, Ring};
use crate::tangency::Problem;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[default]
    Min,
    Max,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_retries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halving_bound: Option<usize>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub objective: String,
    #[serde(default)]
    pub sense: Sense,
    #[serde(default)]
    pub equalities: Vec<String>,
    #[serde(default)]
    pub inequalities: Vec<String>,
    pub point: Vec<String>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

fn line_error(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("line {line}: {msg}"))
}

impl ProblemFile {
    pub fn parse_text(text: &str) -> Result<ProblemFile> {
        let mut pf = ProblemFile::default();
        let mut have_vars = false;
        let mut have_objective = false;
        let mut have_point = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) =
                content.split_once(':').ok_or_else(|| line_error(line, "expected 'key: value'"))?;
            let value = value.trim();
            match key.trim().to_ascii_lowercase().as_str() {
                "vars" | "variables" => {
                    pf.variables = value.split_whitespace().map(str::to_string).collect();
                    have_vars = true;
                }
                "min" | "max" | "objective" => {
                    if have_objective {
                        return Err(line_error(line, "objective given twice"));
                    }
                    pf.sense = if key.trim() == "max" { Sense::Max } else { Sense::Min };
                    pf.objective = value.to_string();
                    have_objective = true;
                }
                "eq" => pf.equalities.push(value.to_string()),
                "ineq" => pf.inequalities.push(value.to_string()),
                "point" => {
                    pf.point = value.split_whitespace().map(str::to_string).collect();
                    have_point = true;
                }
                "seed" => pf.options.seed = Some(value.parse().map_err(|e| line_error(line, e))?),
                "max-retries" | "max_retries" => {
                    pf.options.max_retries = Some(value.parse().map_err(|e| line_error(line, e))?)
                }
                "halving-bound" | "halving_bound" => {
                    pf.options.halving_bound = Some(value.parse().map_err(|e| line_error(line, e))?)
                }
                "radius" => pf.options.radius = Some(value.to_string()),
                other => return Err(line_error(line, format!("unknown key '{other}'"))),
            }
        }
        for (ok, what) in [(have_vars, "vars"), (have_objective, "objective"), (have_point, "point")] {
            if !ok {
                return Err(Error::InvalidInput(format!("missing '{what}' line")));
            }
        }
        Ok(pf)
    }

    pub fn parse_json(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("JSON problem: {e}")))
    }

    pub fn to_problem(&self) -> Result<Problem> {
        if self.variables.is_empty() {
            return Err(Error::InvalidInput("no variables".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.variables {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("variable '{v}' declared twice")));
            }
        }
        let ring = Ring::new(self.variables.iter().cloned());
        let parse = |text: &str| parse_poly(text, &ring);
        let f = parse(&self.objective)?;
        let g = self.equalities.iter().map(|t| parse(t)).collect::<Result<Vec<_>>>()?;
        let h = self.inequalities.iter().map(|t| parse(t)).collect::<Result<Vec<_>>>()?;
        let point = self.point.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
        Problem::new(&ring, f, g, h, point)
    }

    /// Overrides from the file, applied on top of `base`.
    pub fn config(&self, base: &Config) -> Result<Config> {
        let mut cfg = base.clone();
        if let Some(s) = self.options.seed {
            cfg.rng_seed = s;
        }
        if let Some(m) = self.options.max_retries {
            cfg.max_coordinate_retries = m;
        }
        if let Some(b) = self.options.halving_bound {
            cfg.halving_bound = b;
        }
        if let Some(r) = &self.options.radius {
            cfg.radius_override = Some(parse_rational(r)?);
        }
        Ok(cfg)
    }

    /// Text rendering accepted by [`Self::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(" "));
        let key = match self.sense {
            Sense::Min => "min",
            Sense::Max => "max",
        };
        out.push_str(&format!("{key}: {}\n", self.objective));
        for g in &self.equalities {
            out.push_str(&format!("eq: {g}\n"));
        }
        for h in &self.inequalities {
            out.push_str(&format!("ineq: {h}\n"));
        }
        out.push_str(&format!("point: {}\n", self.point.join(" ")));
        if let Some(s) = self.options.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        if let Some(m) = self.options.max_retries {
            out.push_str(&format!("max-retries: {m}\n"));
        }
        if let Some(b) = self.options.halving_bound {
            out.push_str(&format!("halving-bound: {b}\n"));
        }
        if let Some(r) = &self.options.radius {
            out.push_str(&format!("radius: {r}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "vars: x1 x2 x3\nmin: 2*x2^4 + x3^4 - 4*x1^2\neq: -1*x2*x3 - x3^2 + 2*x1\npoint: 0 0 0\n";

    #[test]
    fn text_format() {
        let pf = ProblemFile::parse_text(EX).unwrap();
        assert_eq!(pf.variables, ["x1", "x2", "x3"]);
        assert_eq!(pf.equalities.len(), 1);
        let p = pf.to_problem().unwrap();
        assert_eq!(p.equalities[0].to_string(), "-x2*x3 - x3^2 + 2*x1");
        assert_eq!(ProblemFile::parse_text(&pf.to_text()).unwrap(), pf);
    }

    #[test]
    fn json_round_trip() {
        let pf = ProblemFile::parse_text(&format!("{EX}radius: 1/2\n# note\n")).unwrap();
        let js = serde_json::to_string(&pf).unwrap();
        assert_eq!(ProblemFile::parse_json(&js).unwrap(), pf);
        assert_eq!(pf.config(&Config::default()).unwrap().radius_override, Some(parse_rational("1/2").unwrap()));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(ProblemFile::parse_text("vars: x\npoint: 0\n").is_err());
        assert!(ProblemFile::parse_text("vars: x\nmin: x\npoint: 0\nfoo: 1\n").is_err());
        let pf = ProblemFile::parse_text("vars: x y\nmin: x\npoint: 0\n").unwrap();
        assert!(matches!(pf.to_problem(), Err(Error::InvalidInput(_))));
        let pf = ProblemFile::parse_text("vars: x\nmin: x + w\npoint: 0\n").unwrap();
        assert!(matches!(pf.to_problem(), Err(Error::UnknownVariable { .. })));
    }
}
