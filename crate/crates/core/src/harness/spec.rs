//! Strategy and instance specification strings.
//!
//! Strategies: `iid-first`, `iid-second`, `iid-mix`, `iid-refined`, `general`,
//! `single-sample`, `threshold:<x>`, `sec-full`, `sec-opt`, `sec-hint[:<x>]`,
//! `sec-noinfo`, `sec-arb[:<x>]`, `sec-gap`, `baseline-uniform`.
//!
//! Instances: `iid(<law>, n)`, `laws(<law>, ...)`, `mixed(n)`, `truncexp(n)`,
//! `values(x, ...)`, `powers(k, base)`, `geometric(k)`, `file(<path>)`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::distributions::{parse_law, Law};
use crate::error::{Error, Result};

/// What a strategy is told before the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Nothing beyond `n`.
    Nothing,
    /// The maximum value.
    Optimum,
    /// A fixed lower estimate of the maximum.
    Hint,
    /// The multiset of values.
    Full,
    /// The laws of the values.
    Laws,
    /// One independent sample from each law.
    Samples,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Nothing => "nothing",
            Regime::Optimum => "optimum",
            Regime::Hint => "hint",
            Regime::Full => "full",
            Regime::Laws => "laws",
            Regime::Samples => "samples",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategySpec {
    Threshold(f64),
    IidFirst,
    IidSecond,
    IidMix,
    IidRefined,
    General,
    SingleSample,
    SecFull,
    SecOpt,
    /// Without a value, the hint is the maximum.
    SecHint(Option<f64>),
    SecNoInfo,
    /// Without a value, the hint is the maximum.
    SecArb(Option<f64>),
    SecGap,
    BaselineUniform,
}

impl StrategySpec {
    pub const NAMES: [&'static str; 14] = [
        "iid-first",
        "iid-second",
        "iid-mix",
        "iid-refined",
        "general",
        "single-sample",
        "threshold:<x>",
        "sec-full",
        "sec-opt",
        "sec-hint[:<x>]",
        "sec-noinfo",
        "sec-arb[:<x>]",
        "sec-gap",
        "baseline-uniform",
    ];

    pub fn regime(&self) -> Regime {
        match self {
            StrategySpec::Threshold(_)
            | StrategySpec::SecNoInfo
            | StrategySpec::BaselineUniform => Regime::Nothing,
            StrategySpec::IidFirst
            | StrategySpec::IidSecond
            | StrategySpec::IidMix
            | StrategySpec::IidRefined
            | StrategySpec::General => Regime::Laws,
            StrategySpec::SingleSample => Regime::Samples,
            StrategySpec::SecFull | StrategySpec::SecGap => Regime::Full,
            StrategySpec::SecOpt | StrategySpec::SecHint(None) | StrategySpec::SecArb(None) => {
                Regime::Optimum
            }
            StrategySpec::SecHint(Some(_)) | StrategySpec::SecArb(Some(_)) => Regime::Hint,
        }
    }

    pub fn is_secretary(&self) -> bool {
        matches!(
            self,
            StrategySpec::SecFull
                | StrategySpec::SecOpt
                | StrategySpec::SecHint(_)
                | StrategySpec::SecNoInfo
                | StrategySpec::SecArb(_)
                | StrategySpec::SecGap
                | StrategySpec::BaselineUniform
        )
    }

    /// Every secretary strategy with its default parameters.
    pub fn secretary_catalog() -> Vec<StrategySpec> {
        vec![
            StrategySpec::SecFull,
            StrategySpec::SecOpt,
            StrategySpec::SecHint(None),
            StrategySpec::SecNoInfo,
            StrategySpec::SecArb(None),
            StrategySpec::SecGap,
            StrategySpec::BaselineUniform,
        ]
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::Threshold(x) => write!(f, "threshold:{x}"),
            StrategySpec::IidFirst => f.write_str("iid-first"),
            StrategySpec::IidSecond => f.write_str("iid-second"),
            StrategySpec::IidMix => f.write_str("iid-mix"),
            StrategySpec::IidRefined => f.write_str("iid-refined"),
            StrategySpec::General => f.write_str("general"),
            StrategySpec::SingleSample => f.write_str("single-sample"),
            StrategySpec::SecFull => f.write_str("sec-full"),
            StrategySpec::SecOpt => f.write_str("sec-opt"),
            StrategySpec::SecHint(None) => f.write_str("sec-hint"),
            StrategySpec::SecHint(Some(x)) => write!(f, "sec-hint:{x}"),
            StrategySpec::SecNoInfo => f.write_str("sec-noinfo"),
            StrategySpec::SecArb(None) => f.write_str("sec-arb"),
            StrategySpec::SecArb(Some(x)) => write!(f, "sec-arb:{x}"),
            StrategySpec::SecGap => f.write_str("sec-gap"),
            StrategySpec::BaselineUniform => f.write_str("baseline-uniform"),
        }
    }
}

impl FromStr for StrategySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<StrategySpec> {
        parse_strategy(s)
    }
}

fn position(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
    (line, column)
}

fn parse_error(src: &str, pos: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, pos);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Re-anchor a parse error raised on `src[offset..]` to `src`.
fn shift(err: Error, src: &str, offset: usize) -> Error {
    match err {
        Error::Parse {
            line,
            column,
            message,
        } => {
            let sub = &src[offset..];
            let line_start = if line <= 1 {
                0
            } else {
                sub.match_indices('\n')
                    .nth(line - 2)
                    .map_or(0, |(i, _)| i + 1)
            };
            parse_error(src, offset + line_start + column - 1, message)
        }
        other => other,
    }
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

pub fn parse_strategy(src: &str) -> Result<StrategySpec> {
    let start = leading_ws(src);
    let text = src.trim();
    if text.is_empty() {
        return Err(parse_error(src, start, "empty strategy specification"));
    }
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n.trim_end(), Some(a)),
        None => (text, None),
    };
    let arg_pos = start + name.len() + 1;
    let value = |required: bool| -> Result<Option<f64>> {
        match arg {
            None if required => Err(parse_error(
                src,
                start + name.len(),
                format!("{name} needs a value, as in {name}:2.5"),
            )),
            None => Ok(None),
            Some(a) => {
                let off = arg_pos + leading_ws(a);
                let x: f64 = a.trim().parse().map_err(|_| {
                    parse_error(src, off, format!("expected a number, found {:?}", a.trim()))
                })?;
                if x.is_nan() || x < 0.0 {
                    return Err(parse_error(
                        src,
                        off,
                        format!("value must be nonnegative, got {x}"),
                    ));
                }
                Ok(Some(x))
            }
        }
    };
    let no_arg = |spec: StrategySpec| -> Result<StrategySpec> {
        match arg {
            Some(_) => Err(parse_error(
                src,
                arg_pos - 1,
                format!("{name} takes no value"),
            )),
            None => Ok(spec),
        }
    };
    match name {
        "threshold" => Ok(StrategySpec::Threshold(value(true)?.expect("required"))),
        "iid-first" => no_arg(StrategySpec::IidFirst),
        "iid-second" => no_arg(StrategySpec::IidSecond),
        "iid-mix" => no_arg(StrategySpec::IidMix),
        "iid-refined" => no_arg(StrategySpec::IidRefined),
        "general" => no_arg(StrategySpec::General),
        "single-sample" => no_arg(StrategySpec::SingleSample),
        "sec-full" => no_arg(StrategySpec::SecFull),
        "sec-opt" => no_arg(StrategySpec::SecOpt),
        "sec-hint" => Ok(StrategySpec::SecHint(value(false)?)),
        "sec-noinfo" => no_arg(StrategySpec::SecNoInfo),
        "sec-arb" => Ok(StrategySpec::SecArb(value(false)?)),
        "sec-gap" => no_arg(StrategySpec::SecGap),
        "baseline-uniform" => no_arg(StrategySpec::BaselineUniform),
        other => Err(parse_error(
            src,
            start,
            format!(
                "unknown strategy {other:?}; expected one of {}",
                StrategySpec::NAMES.join(", ")
            ),
        )),
    }
}

/// A family of instances.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    /// `n` i.i.d. draws per trial.
    Iid { law: Law, n: usize },
    /// One draw from each law per trial, in the listed order.
    Laws(Vec<Law>),
    /// `ceil(n/2)` draws of `exp(1)` followed by `floor(n/2)` of `uniform(0,2)`.
    Mixed { n: usize },
    /// `n` draws of `min(Exp(1), ln(n)/2)` per trial.
    TruncExp { n: usize },
    /// Fixed values in the listed order.
    Values(Vec<f64>),
    /// Value `j` repeated `base^(k-j)` times, uniformly shuffled.
    Powers { k: u32, base: u64 },
    /// The geometric-order generator over levels `0..=k`.
    Geometric { k: u32 },
    /// An instance file.
    File(PathBuf),
}

impl InstanceSpec {
    /// Replace the size parameter: `n` for drawn families, `k` for `powers` and
    /// `geometric`.
    pub fn with_size(&self, size: usize) -> Result<InstanceSpec> {
        let k = || -> Result<u32> {
            u32::try_from(size).map_err(|_| Error::config(format!("level count {size} too large")))
        };
        Ok(match self {
            InstanceSpec::Iid { law, .. } => InstanceSpec::Iid {
                law: law.clone(),
                n: size,
            },
            InstanceSpec::Mixed { .. } => InstanceSpec::Mixed { n: size },
            InstanceSpec::TruncExp { .. } => InstanceSpec::TruncExp { n: size },
            InstanceSpec::Powers { base, .. } => InstanceSpec::Powers {
                k: k()?,
                base: *base,
            },
            InstanceSpec::Geometric { .. } => InstanceSpec::Geometric { k: k()? },
            other => {
                return Err(Error::config(format!(
                    "instance {other} has no size parameter"
                )));
            }
        })
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, items: &mut dyn Iterator<Item = String>| {
            let joined: Vec<String> = items.collect();
            f.write_str(&joined.join(", "))
        };
        match self {
            InstanceSpec::Iid { law, n } => write!(f, "iid({law}, {n})"),
            InstanceSpec::Laws(laws) => {
                f.write_str("laws(")?;
                list(f, &mut laws.iter().map(|l| l.to_string()))?;
                f.write_str(")")
            }
            InstanceSpec::Mixed { n } => write!(f, "mixed({n})"),
            InstanceSpec::TruncExp { n } => write!(f, "truncexp({n})"),
            InstanceSpec::Values(v) => {
                f.write_str("values(")?;
                list(f, &mut v.iter().map(|x| x.to_string()))?;
                f.write_str(")")
            }
            InstanceSpec::Powers { k, base } => write!(f, "powers({k}, {base})"),
            InstanceSpec::Geometric { k } => write!(f, "geometric({k})"),
            InstanceSpec::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<InstanceSpec> {
        parse_instance(s)
    }
}

impl Serialize for InstanceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InstanceSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for StrategySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrategySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Split `body` (starting at byte `offset` of `src`) at top-level commas.
fn split_args(src: &str, offset: usize, body: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_error(src, offset + i, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                out.push((offset + start, body[start..i].to_string()));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_error(src, offset + body.len(), "unbalanced '('"));
    }
    out.push((offset + start, body[start..].to_string()));
    Ok(out)
}

pub fn parse_instance(src: &str) -> Result<InstanceSpec> {
    let start = leading_ws(src);
    let text = src.trim_end();
    let open = text[start..]
        .find('(')
        .map(|i| start + i)
        .ok_or_else(|| parse_error(src, start, "expected name(arguments)"))?;
    let name = text[start..open].trim();
    if !text.ends_with(')') {
        return Err(parse_error(src, text.len(), "expected ')' at the end"));
    }
    let body_start = open + 1;
    let body = &text[body_start..text.len() - 1];
    if name == "file" {
        let path = body.trim();
        if path.is_empty() {
            return Err(parse_error(src, body_start, "empty path"));
        }
        return Ok(InstanceSpec::File(PathBuf::from(path)));
    }
    let args = split_args(src, body_start, body)?;
    let arity = |want: usize| -> Result<()> {
        if args.len() != want {
            return Err(parse_error(
                src,
                start,
                format!("{name} takes {want} argument(s), got {}", args.len()),
            ));
        }
        Ok(())
    };
    let count = |i: usize| -> Result<usize> {
        let (pos, a) = &args[i];
        a.trim().parse().map_err(|_| {
            parse_error(
                src,
                pos + leading_ws(a),
                format!("expected a count, found {:?}", a.trim()),
            )
        })
    };
    let number = |(pos, a): &(usize, String)| -> Result<f64> {
        let x: f64 = a.trim().parse().map_err(|_| {
            parse_error(
                src,
                pos + leading_ws(a),
                format!("expected a number, found {:?}", a.trim()),
            )
        })?;
        if !(x.is_finite() && x >= 0.0) {
            return Err(parse_error(
                src,
                pos + leading_ws(a),
                format!("values must be finite and nonnegative, got {x}"),
            ));
        }
        Ok(x)
    };
    let law = |(pos, a): &(usize, String)| -> Result<Law> {
        parse_law(a).map_err(|e| shift(e, src, *pos))
    };
    let positive = |n: usize, i: usize| -> Result<usize> {
        if n == 0 {
            Err(parse_error(
                src,
                args[i].0 + leading_ws(&args[i].1),
                "count must be positive",
            ))
        } else {
            Ok(n)
        }
    };
    let spec = match name {
        "iid" => {
            arity(2)?;
            InstanceSpec::Iid {
                law: law(&args[0])?,
                n: positive(count(1)?, 1)?,
            }
        }
        "laws" => InstanceSpec::Laws(args.iter().map(law).collect::<Result<_>>()?),
        "mixed" => {
            arity(1)?;
            InstanceSpec::Mixed {
                n: positive(count(0)?, 0)?,
            }
        }
        "truncexp" => {
            arity(1)?;
            let n = count(0)?;
            if n < 2 {
                return Err(parse_error(src, args[0].0, "truncexp needs n >= 2"));
            }
            InstanceSpec::TruncExp { n }
        }
        "values" => InstanceSpec::Values(args.iter().map(number).collect::<Result<_>>()?),
        "powers" => {
            arity(2)?;
            let k = count(0)?;
            let base = count(1)?;
            if base < 2 {
                return Err(parse_error(src, args[1].0, "base must be at least 2"));
            }
            InstanceSpec::Powers {
                k: u32::try_from(k).map_err(|_| parse_error(src, args[0].0, "k too large"))?,
                base: base as u64,
            }
        }
        "geometric" => {
            arity(1)?;
            let k = count(0)?;
            InstanceSpec::Geometric {
                k: u32::try_from(k).map_err(|_| parse_error(src, args[0].0, "k too large"))?,
            }
        }
        other => {
            return Err(parse_error(
                src,
                start,
                format!(
                    "unknown instance {other:?}; expected iid, laws, mixed, truncexp, values, powers, geometric or file"
                ),
            ))
        }
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_pos(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn strategies_round_trip() {
        for s in [
            "iid-first",
            "iid-second",
            "iid-mix",
            "iid-refined",
            "general",
            "single-sample",
            "threshold:2.5",
            "sec-full",
            "sec-opt",
            "sec-hint",
            "sec-hint:3",
            "sec-noinfo",
            "sec-arb",
            "sec-arb:7",
            "sec-gap",
            "baseline-uniform",
        ] {
            let spec: StrategySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            parse_strategy("threshold:inf").unwrap(),
            StrategySpec::Threshold(f64::INFINITY)
        );
    }

    #[test]
    fn strategy_errors_carry_positions() {
        assert_eq!(parse_pos(parse_strategy("sec-bogus").unwrap_err()), (1, 1));
        assert_eq!(
            parse_pos(parse_strategy("threshold:x").unwrap_err()),
            (1, 11)
        );
        assert_eq!(
            parse_pos(parse_strategy("  threshold: -1").unwrap_err()),
            (1, 14)
        );
        assert_eq!(parse_pos(parse_strategy("threshold").unwrap_err()), (1, 10));
        assert_eq!(parse_pos(parse_strategy("sec-opt:3").unwrap_err()), (1, 8));
    }

    #[test]
    fn regimes() {
        assert_eq!(StrategySpec::SecFull.regime(), Regime::Full);
        assert_eq!(StrategySpec::SecHint(Some(2.0)).regime(), Regime::Hint);
        assert_eq!(StrategySpec::SecArb(None).regime(), Regime::Optimum);
        assert_eq!(StrategySpec::General.regime(), Regime::Laws);
        assert_eq!(StrategySpec::SingleSample.regime(), Regime::Samples);
        assert_eq!(StrategySpec::Threshold(1.0).regime(), Regime::Nothing);
    }

    #[test]
    fn instances_round_trip() {
        for s in [
            "iid(exp(1), 1024)",
            "laws(exp(1), uniform(0,2))",
            "mixed(256)",
            "truncexp(10000)",
            "values(1, 5)",
            "powers(10, 2)",
            "geometric(8)",
            "file(/tmp/x.json)",
        ] {
            let spec: InstanceSpec = s.parse().unwrap();
            assert_eq!(
                spec.to_string().parse::<InstanceSpec>().unwrap(),
                spec,
                "{s}"
            );
        }
        assert_eq!(
            parse_instance("iid(exp(1),8)").unwrap(),
            InstanceSpec::Iid {
                law: Law::exponential(1.0).unwrap(),
                n: 8
            }
        );
    }

    #[test]
    fn instance_errors_carry_positions() {
        assert_eq!(
            parse_pos(parse_instance("iid(exp(1), x)").unwrap_err()),
            (1, 13)
        );
        // Law errors are re-anchored to the full string.
        assert_eq!(
            parse_pos(parse_instance("iid(bogus(1), 4)").unwrap_err()),
            (1, 5)
        );
        assert_eq!(
            parse_pos(parse_instance("laws(exp(1),\n exp(-1))").unwrap_err()),
            (2, 2)
        );
        assert_eq!(parse_pos(parse_instance("nothing(1)").unwrap_err()), (1, 1));
        assert_eq!(
            parse_pos(parse_instance("values(1, -2)").unwrap_err()),
            (1, 11)
        );
        assert!(parse_instance("iid(exp(1), 0)").is_err());
        assert!(parse_instance("powers(3, 1)").is_err());
        assert!(parse_instance("mixed(4").is_err());
    }

    #[test]
    fn sizes() {
        let s = parse_instance("iid(exp(1), 8)")
            .unwrap()
            .with_size(64)
            .unwrap();
        assert_eq!(s.to_string(), "iid(exp(1), 64)");
        let g = parse_instance("powers(3, 2)")
            .unwrap()
            .with_size(8)
            .unwrap();
        assert_eq!(g, InstanceSpec::Powers { k: 8, base: 2 });
        assert!(parse_instance("values(1)").unwrap().with_size(3).is_err());
    }
}
