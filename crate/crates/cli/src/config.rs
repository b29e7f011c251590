//! Run configuration shared by every subcommand: flags, environment
//! overrides and their defaults.

use std::fmt;

use germkit::coeff::DEFAULT_PRIME;
use germkit::parse::{parse_ring_declaration, RingDeclaration};
use germkit::poincare::Order;
use germkit::stdbasis::{PairSelection, ReducerSelection, StdConfig, Strategy, DEFAULT_CEILING};

/// Ring used by the family shorthands when `--ring` is absent.
pub const DEFAULT_FAMILY_RING: &str = "0 (x,y,z) ds";

/// Inputs whose degree reaches this bound are moved from characteristic 0
/// to `DEFAULT_PRIME` unless a characteristic was requested explicitly.
pub const DEFAULT_SWITCH_DEGREE: u32 = 30;

/// A usage error: names the offending flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub flag: String,
    pub message: String,
}

impl UsageError {
    pub fn new(flag: &str, message: impl Into<String>) -> Self {
        UsageError {
            flag: flag.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.flag, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub characteristic: Option<u32>,
    pub ordering: Option<String>,
    pub strategy: Strategy,
    pub order: Order,
    pub format: Format,
    pub ceiling: u64,
    pub seed: u64,
    pub jobs: usize,
    pub switch_degree: u32,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            characteristic: None,
            ordering: None,
            strategy: Strategy::default(),
            order: Order::Auto,
            format: Format::Text,
            ceiling: DEFAULT_CEILING,
            seed: 0,
            jobs: 1,
            switch_degree: DEFAULT_SWITCH_DEGREE,
        }
    }
}

impl JobConfig {
    pub fn std_config(&self) -> StdConfig {
        StdConfig {
            strategy: self.strategy,
            ceiling: self.ceiling,
            ..StdConfig::default()
        }
    }

    /// Applies `--char` and `--ordering` to a declaration. Returns the
    /// declaration and whether the characteristic was switched because of
    /// `input_degree`.
    pub fn resolve_ring(
        &self,
        decl: &RingDeclaration,
        input_degree: u32,
    ) -> Result<(RingDeclaration, bool), UsageError> {
        let mut out = decl.clone();
        if let Some(tok) = &self.ordering {
            out.ordering = ordering_for(&decl.variables, tok)?;
        }
        let mut switched = false;
        match self.characteristic {
            Some(p) => out.characteristic = p,
            None => {
                if decl.characteristic == 0 && self.switch_degree > 0 && input_degree >= self.switch_degree {
                    out.characteristic = DEFAULT_PRIME;
                    switched = true;
                }
            }
        }
        Ok((out, switched))
    }
}

/// Parses an ordering token for the given variables.
pub fn ordering_for(vars: &[String], tok: &str) -> Result<germkit::ring::OrderingSpec, UsageError> {
    parse_ring_declaration(&format!("0 ({}) {tok}", vars.join(",")))
        .map(|d| d.ordering)
        .map_err(|e| UsageError::new("--ordering", e.to_string()))
}

/// Parses `sugar/min-ecart/no-chain` style strategy names; missing parts
/// keep their defaults.
pub fn parse_strategy(s: &str) -> Result<Strategy, UsageError> {
    let mut st = Strategy::default();
    for part in s.split('/').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "sugar" => st.pair_selection = PairSelection::Sugar,
            "min-lcm-degree" => st.pair_selection = PairSelection::MinLcmDegree,
            "fifo" => st.pair_selection = PairSelection::Fifo,
            "min-ecart" => st.reducer_selection = ReducerSelection::MinEcart,
            "first-found" => st.reducer_selection = ReducerSelection::FirstFound,
            "product" => st.product_criterion = true,
            "no-product" => st.product_criterion = false,
            "chain" => st.chain_criterion = true,
            "no-chain" => st.chain_criterion = false,
            other => {
                return Err(UsageError::new(
                    "--strategy",
                    format!("unknown strategy part `{other}`"),
                ))
            }
        }
    }
    Ok(st)
}

pub fn parse_order(s: &str) -> Result<Order, UsageError> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Order::Auto);
    }
    s.parse().map(Order::Fixed).map_err(|_| {
        UsageError::new(
            "--order-N",
            format!("expected AUTO or a non-negative integer, got `{s}`"),
        )
    })
}

/// The named families addressable from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Zariski { a: u32, b: u32, c: u32, t: String },
    Ft { k: u32, l: u32 },
}

impl Family {
    pub fn max_degree(&self) -> u32 {
        match self {
            Family::Zariski { a, b, c, .. } => (*a).max(*b).max(3 * c).max(2 * c + 2),
            Family::Ft { k, l } => (k - 1).max(l - 1).max(3),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Family::Zariski { a, b, c, t } => format!("zariski:{a},{b},{c}:t={t}"),
            Family::Ft { k, l } => format!("ft:{k},{l}"),
        }
    }
}

/// Parses `zariski:a,b,c:t=q` and `ft:k,l`.
pub fn parse_family(s: &str) -> Result<Family, UsageError> {
    let bad = |m: &str| UsageError::new("--family", format!("{m} in `{s}`"));
    let nums = |t: &str, n: usize| -> Result<Vec<u32>, UsageError> {
        let v: Vec<u32> = t
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("expected comma-separated integers"))?;
        if v.len() != n {
            return Err(bad(&format!("expected {n} integers")));
        }
        Ok(v)
    };
    let mut parts = s.split(':');
    match parts.next() {
        Some("zariski") => {
            let v = nums(parts.next().ok_or_else(|| bad("missing a,b,c"))?, 3)?;
            let t = match parts.next() {
                None => "0".to_string(),
                Some(p) => p
                    .strip_prefix("t=")
                    .ok_or_else(|| bad("expected t=q"))?
                    .trim()
                    .to_string(),
            };
            if parts.next().is_some() {
                return Err(bad("trailing fields"));
            }
            germkit::invariants::parse_rational(&t).map_err(|e| bad(&e.to_string()))?;
            Ok(Family::Zariski {
                a: v[0],
                b: v[1],
                c: v[2],
                t,
            })
        }
        Some("ft") => {
            let v = nums(parts.next().ok_or_else(|| bad("missing k,l"))?, 2)?;
            if parts.next().is_some() {
                return Err(bad("trailing fields"));
            }
            Ok(Family::Ft { k: v[0], l: v[1] })
        }
        _ => Err(bad("unknown family")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_names_round_trip() {
        for st in Strategy::all() {
            assert_eq!(parse_strategy(&st.to_string()).unwrap(), st);
        }
        assert_eq!(parse_strategy("").unwrap(), Strategy::default());
        assert_eq!(parse_strategy("bogus").unwrap_err().flag, "--strategy");
    }

    #[test]
    fn families() {
        assert_eq!(
            parse_family("zariski:40,30,8:t=1").unwrap(),
            Family::Zariski {
                a: 40,
                b: 30,
                c: 8,
                t: "1".into()
            }
        );
        assert_eq!(parse_family("ft:5,4").unwrap(), Family::Ft { k: 5, l: 4 });
        assert!(parse_family("ft:5").is_err());
        assert!(parse_family("zariski:1,2,3:t=x").is_err());
        assert!(parse_family("cusp:1").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("AUTO").unwrap(), Order::Auto);
        assert_eq!(parse_order("7").unwrap(), Order::Fixed(7));
        assert!(parse_order("-1").is_err());
    }

    #[test]
    fn switch_only_without_explicit_char() {
        let d = parse_ring_declaration("0 (x,y,z) ds").unwrap();
        let cfg = JobConfig::default();
        assert_eq!(cfg.resolve_ring(&d, 40).unwrap().0.characteristic, DEFAULT_PRIME);
        assert!(!cfg.resolve_ring(&d, 5).unwrap().1);
        let cfg = JobConfig {
            characteristic: Some(0),
            ..JobConfig::default()
        };
        assert!(!cfg.resolve_ring(&d, 40).unwrap().1);
        let cfg = JobConfig {
            ordering: Some("ls".into()),
            ..JobConfig::default()
        };
        assert_eq!(cfg.resolve_ring(&d, 1).unwrap().0.ordering.token(), "ls");
    }
}
