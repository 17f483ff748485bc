//! Ring specs for `eval`: named presets joined by `x`/`×`, an optional
//! coefficient suffix, or a JSON presentation.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use crate::cohomology::{parse_element, CoefficientDomain, Generator, RingElement, RingPresentation};

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Preset {
    /// `ℚ[t]/(t^{n+1})`.
    Cp(u32),
    /// Even part of a closed surface of genus `g`: `ℚ[s]/(s²)`.
    Surface(u32),
    /// Real cohomology of a fake projective plane: `ℚ[t]/(t³)`.
    Fpp,
    /// `ℚ[t1..tm]/(t_j²)`.
    Nilsquare(u32),
}

impl Preset {
    fn parse(text: &str) -> Result<Self, CliError> {
        let (name, arg) = match text.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (text, None),
        };
        let number = |what: &str| -> Result<u32, CliError> {
            let a = arg.ok_or_else(|| CliError::Usage(format!("preset `{name}` needs `{name}:{what}`")))?;
            a.parse()
                .map_err(|_| CliError::Usage(format!("`{a}` is not a valid {what} for preset `{name}`")))
        };
        let preset = match name {
            "cp" => Preset::Cp(number("n")?),
            "surface" => Preset::Surface(number("g")?),
            "nilsquare" => Preset::Nilsquare(number("m")?),
            "fpp" if arg.is_none() => Preset::Fpp,
            "fpp" => return Err(CliError::Usage("preset `fpp` takes no argument".into())),
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown preset `{text}` (expected cp:n, surface:g, fpp or nilsquare:m)"
                )))
            }
        };
        match preset {
            Preset::Cp(0) => Err(CliError::Usage("cp:n needs n >= 1".into())),
            Preset::Nilsquare(0) => Err(CliError::Usage("nilsquare:m needs m >= 1".into())),
            p => Ok(p),
        }
    }

    fn stem(self) -> &'static str {
        match self {
            Preset::Surface(_) => "s",
            _ => "t",
        }
    }

    fn generators(self, stem: &str) -> Vec<Generator> {
        match self {
            Preset::Cp(n) => vec![Generator::new(stem, 2, n + 1)],
            Preset::Surface(_) => vec![Generator::new(stem, 2, 2)],
            Preset::Fpp => vec![Generator::new(stem, 2, 3)],
            Preset::Nilsquare(m) => (1..=m).map(|j| Generator::new(format!("{stem}{j}"), 2, 2)).collect(),
        }
    }
}

const FALLBACK_STEMS: [&str; 6] = ["h", "u", "v", "w", "a", "b"];

/// Parses a ring spec: inline JSON (`{...}`), a path ending in `.json`, or
/// presets such as `fpp×cp:2@Z`.
///
/// Each preset factor keeps its usual generator name unless an earlier factor
/// took it; it then falls back to `h`, `u`, `v`, `w`, `a`, `b`.
pub fn parse_ring_spec(spec: &str) -> Result<Arc<RingPresentation>, CliError> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return presentation_from_json(spec);
    }
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("cannot read `{spec}`: {e}")))?;
        return presentation_from_json(&text);
    }
    let (body, coefficients) = match spec.split_once('@') {
        Some((b, c)) => (b, parse_coefficients(c)?),
        None => (spec, CoefficientDomain::Rationals),
    };
    let mut used = HashSet::new();
    let mut generators = Vec::new();
    for part in body.split(['x', '×']) {
        let preset = Preset::parse(part.trim())?;
        let stem = std::iter::once(preset.stem())
            .chain(FALLBACK_STEMS)
            .find(|s| preset.generators(s).iter().all(|g| !used.contains(&g.name)))
            .ok_or_else(|| CliError::Usage("too many factors to name".into()))?;
        for g in preset.generators(stem) {
            used.insert(g.name.clone());
            generators.push(g);
        }
    }
    RingPresentation::new(generators, coefficients)
        .map(Arc::new)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_coefficients(text: &str) -> Result<CoefficientDomain, CliError> {
    match text {
        "Z" => Ok(CoefficientDomain::Integers),
        "Q" => Ok(CoefficientDomain::Rationals),
        _ => {
            let m = text
                .strip_prefix("mod")
                .and_then(|m| m.parse::<u64>().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown coefficients `@{text}` (expected @Z, @Q or @modN)")))?;
            CoefficientDomain::integers_mod(m).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn presentation_from_json(text: &str) -> Result<Arc<RingPresentation>, CliError> {
    serde_json::from_str::<RingPresentation>(text)
        .map(Arc::new)
        .map_err(|e| CliError::Usage(format!("invalid ring presentation: {e}")))
}

/// `Q[t, h]/(t^3, h^3)`.
pub fn describe_ring(r: &RingPresentation) -> String {
    let names: Vec<&str> = r.generators().iter().map(|g| g.name.as_str()).collect();
    let relations: Vec<String> = r.generators().iter().map(|g| format!("{}^{}", g.name, g.truncation)).collect();
    let coefficients = match r.coefficients() {
        CoefficientDomain::Integers => "Z".to_string(),
        CoefficientDomain::Rationals => "Q".to_string(),
        CoefficientDomain::IntegersMod(m) => format!("Z/{m}"),
    };
    format!("{coefficients}[{}]/({})", names.join(", "), relations.join(", "))
}

/// A parsed element with its homogeneous components.
pub struct Evaluation {
    pub ring: Arc<RingPresentation>,
    pub element: RingElement,
}

impl Evaluation {
    pub fn new(spec: &str, expr: &str) -> Result<Self, CliError> {
        let ring = parse_ring_spec(spec)?;
        let element = parse_element(expr, &ring).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Evaluation { ring, element })
    }

    fn components(&self) -> Vec<(u32, RingElement)> {
        self.element
            .degrees()
            .into_iter()
            .map(|k| (k, self.element.homogeneous_component(k)))
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}\n", self.element);
        let _ = writeln!(out, "ring: {}\n", describe_ring(&self.ring));
        out.push_str("| degree | component |\n|---|---|\n");
        for (k, c) in self.components() {
            let _ = writeln!(out, "| {k} | {c} |");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let value = json!({
            "ring": serde_json::to_value(&*self.ring).expect("plain data"),
            "element": self.element.to_string(),
            "components": self.components().iter()
                .map(|(k, c)| json!({"degree": k, "element": c.to_string()}))
                .collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&value).expect("plain data");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(spec: &str, expr: &str) -> String {
        Evaluation::new(spec, expr).unwrap().element.to_string()
    }

    #[test]
    fn preset_examples() {
        assert_eq!(eval("fpp×cp:2", "(t + 3*h)^2"), "t^2 + 6*t*h + 9*h^2");
        assert_eq!(eval("cp:2", "(1+t)^3"), "1 + 3*t + 3*t^2");
        assert_eq!(eval("nilsquare:2", "(t1+t2)^2"), "2*t1*t2");
    }

    #[test]
    fn naming_and_coefficients() {
        let r = parse_ring_spec("surface:2 x cp:3 x cp:1@mod5").unwrap();
        assert_eq!(describe_ring(&r), "Z/5[s, t, h]/(s^2, t^4, h^2)");
        let r = parse_ring_spec("nilsquare:2xnilsquare:1@Z").unwrap();
        assert_eq!(describe_ring(&r), "Z[t1, t2, h1]/(t1^2, t2^2, h1^2)");
        assert_eq!(eval("cp:2@mod3", "4*t + 3"), "t");
    }

    #[test]
    fn json_presentation() {
        let spec = r#"{"coefficients": {"mod": 7}, "generators": [{"name": "x", "degree": 4, "truncation": 2}]}"#;
        let e = Evaluation::new(spec, "8*x + 1").unwrap();
        assert_eq!(e.element.to_string(), "1 + x");
        assert!(e.to_json().contains("\"degree\": 4"));
    }

    #[test]
    fn errors() {
        for spec in ["cp", "cp:0", "fpp:2", "torus", "cp:2@R", "cp:2@mod1", "{\"coefficients\":\"Q\"}"] {
            assert!(parse_ring_spec(spec).is_err(), "{spec}");
        }
        let err = Evaluation::new("cp:2", "t + x").err().unwrap();
        assert!(err.to_string().contains('x'));
        assert!(Evaluation::new("cp:2@Z", "t/2").is_err());
    }
}
