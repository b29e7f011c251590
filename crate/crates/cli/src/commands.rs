//! Computations behind the subcommands, generic over the coefficient field.

use serde_json::{json, Map, Value};

use germkit::coeff::Field;
use germkit::invariants::{
    find_weights, ft_germ, hypersurface_report, is_quasihomogeneous_hypersurface, is_quasihomogeneous_space_curve,
    milnor_hypersurface, milnor_space_curve, multiplicity_hypersurface, multiplicity_space_curve, parse_rational,
    space_curve_report, tjurina_hypersurface, tjurina_space_curve, zariski_family, Dim, HypersurfaceGerm,
    SpaceCurveGerm,
};
use germkit::parse::serialize;
use germkit::poincare::{exactness_report, Condition1};
use germkit::ring::{Polynomial, Ring};
use germkit::stdbasis::std_ideal;
use germkit::{Error, Result};

use crate::config::{Family, JobConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Std,
    Vdim,
    Milnor,
    Tjurina,
    Mult,
    Qh,
    Reiffen,
    /// Every invariant of a hypersurface or space curve.
    Report,
    /// Multiplicity and Milnor number only.
    MultMu,
}

impl Command {
    pub fn from_name(name: &str) -> Option<Command> {
        Some(match name {
            "std" => Command::Std,
            "vdim" => Command::Vdim,
            "milnor" => Command::Milnor,
            "tjurina" => Command::Tjurina,
            "mult" => Command::Mult,
            "qh" => Command::Qh,
            "reiffen" => Command::Reiffen,
            "report" => Command::Report,
            _ => return None,
        })
    }
}

/// Result of one computation: a text rendering and the JSON fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Outcome {
    fn new(text: impl Into<String>, fields: Value) -> Self {
        let Value::Object(fields) = fields else {
            unreachable!("outcome fields are objects")
        };
        Outcome {
            text: text.into(),
            fields,
        }
    }
}

/// The polynomials a family stands for: `[F_t]` or `[f, g]`.
pub fn family_polys<F: Field>(ring: &Ring<F>, family: &Family) -> Result<Vec<Polynomial<F>>> {
    match family {
        Family::Zariski { a, b, c, t } => Ok(vec![zariski_family(ring, *a, *b, *c, &parse_rational(t)?)?]),
        Family::Ft { k, l } => {
            let g = ft_germ(ring, *k, *l)?;
            Ok(vec![g.f().clone(), g.g().clone()])
        }
    }
}

enum Germ<F: Field> {
    Hyper(HypersurfaceGerm<F>),
    Curve(SpaceCurveGerm<F>),
}

fn germ<F: Field>(polys: &[Polynomial<F>]) -> Result<Germ<F>> {
    match polys {
        [f] => Ok(Germ::Hyper(HypersurfaceGerm::new(f.clone())?)),
        [f, g] => Ok(Germ::Curve(SpaceCurveGerm::new(f.clone(), g.clone())?)),
        _ => Err(Error::ParameterOutOfRange(format!(
            "expected one polynomial (hypersurface) or two (space curve), got {}",
            polys.len()
        ))),
    }
}

fn mu_text(mu: Dim, swapped: Option<Dim>) -> String {
    match swapped {
        Some(s) => format!("{mu} (swapped: {s})"),
        None => mu.to_string(),
    }
}

/// Milnor number of a curve together with the value for `(g, f)` when it
/// differs.
fn curve_mu<F: Field>(g: &SpaceCurveGerm<F>, cfg: &JobConfig) -> Result<(Dim, Option<Dim>)> {
    let std_cfg = cfg.std_config();
    let mu = milnor_space_curve(g, &std_cfg)?;
    let swapped = match milnor_space_curve(&g.swapped(), &std_cfg) {
        Ok(m) => m,
        Err(Error::NonIsolated) => Dim::Infinite,
        Err(e) => return Err(e),
    };
    Ok((mu, (swapped != mu).then_some(swapped)))
}

pub fn compute<F: Field>(cmd: Command, polys: &[Polynomial<F>], cfg: &JobConfig) -> Result<Outcome> {
    let std_cfg = cfg.std_config();
    match cmd {
        Command::Std | Command::Vdim => {
            let first = polys
                .first()
                .ok_or_else(|| Error::ParameterOutOfRange("no generators given".into()))?;
            let sb = std_ideal(first.ring(), polys, &std_cfg)?;
            let vdim = Dim::from(sb.vdim());
            if cmd == Command::Vdim {
                return Ok(Outcome::new(vdim.to_string(), json!({ "vdim": vdim })));
            }
            let basis: Vec<String> = sb.polynomials()?.iter().map(serialize).collect();
            let st = sb.stats();
            Ok(Outcome::new(
                basis.join("\n"),
                json!({
                    "basis": basis,
                    "vdim": vdim,
                    "stats": { "pairs": st.pairs, "discarded": st.discarded, "reductions": st.reductions },
                }),
            ))
        }
        Command::Milnor => match germ(polys)? {
            Germ::Hyper(h) => {
                let mu = milnor_hypersurface(&h, &std_cfg)?;
                Ok(Outcome::new(mu.to_string(), json!({ "mu": mu })))
            }
            Germ::Curve(c) => {
                let (mu, swapped) = curve_mu(&c, cfg)?;
                let mut out = Outcome::new(mu_text(mu, swapped), json!({ "mu": mu }));
                if let Some(s) = swapped {
                    out.fields.insert("mu_swapped".into(), json!(s));
                }
                Ok(out)
            }
        },
        Command::Tjurina => {
            let tau = match germ(polys)? {
                Germ::Hyper(h) => tjurina_hypersurface(&h, &std_cfg)?,
                Germ::Curve(c) => tjurina_space_curve(&c, &std_cfg)?,
            };
            Ok(Outcome::new(tau.to_string(), json!({ "tau": tau })))
        }
        Command::Mult => {
            let m = match germ(polys)? {
                Germ::Hyper(h) => multiplicity_hypersurface(&h)?,
                Germ::Curve(c) => multiplicity_space_curve(&c, &std_cfg)?,
            };
            Ok(Outcome::new(m.to_string(), json!({ "multiplicity": m })))
        }
        Command::Qh => match germ(polys)? {
            Germ::Hyper(h) => {
                let qh = is_quasihomogeneous_hypersurface(&h, &std_cfg)?;
                let weights = find_weights(h.f())?.map(|w| w.iter().map(|r| r.to_string()).collect::<Vec<_>>());
                Ok(Outcome::new(
                    qh.to_string(),
                    json!({ "quasi_homogeneous": qh, "weights": weights }),
                ))
            }
            Germ::Curve(c) => {
                let qh = is_quasihomogeneous_space_curve(&c, &std_cfg)?;
                Ok(Outcome::new(qh.to_string(), json!({ "quasi_homogeneous": qh })))
            }
        },
        Command::Reiffen => {
            let [f, g] = polys else {
                return Err(Error::ParameterOutOfRange(format!(
                    "the exactness test needs a space curve (two polynomials), got {}",
                    polys.len()
                )));
            };
            let rep = exactness_report(f, g, cfg.order, &std_cfg)?;
            let c1 = match rep.condition1 {
                Condition1::Verified { order, vacuous: false } => format!("verified to order {order}"),
                Condition1::Verified { vacuous: true, .. } => "vacuous at order 0".to_string(),
                Condition1::RefutedAt { order } => format!("refuted at order {order}"),
            };
            let c2 = &rep.condition2;
            let text = format!(
                "order {}\ncondition1 {c1}\ncondition2 {} (mu {}, omega2 {}, omega3 {})\ntau {}\nquasi_homogeneous {}\nverdict {}",
                rep.order,
                if c2.holds { "holds" } else { "fails" },
                c2.mu,
                c2.omega2,
                c2.omega3,
                rep.tau,
                rep.quasi_homogeneous,
                to_value(&rep.verdict).as_str().unwrap_or_default(),
            );
            let mut v = to_value(&rep);
            strip_meta(&mut v);
            Ok(Outcome::new(text, v))
        }
        Command::Report => {
            let rep = match germ(polys)? {
                Germ::Hyper(h) => hypersurface_report(&h, &std_cfg)?,
                Germ::Curve(c) => space_curve_report(&c, &std_cfg)?,
            };
            let mut text = format!("mu {}", mu_text(rep.mu, rep.mu_swapped));
            text += &format!(
                "\ntau {}\nmultiplicity {}\nquasi_homogeneous {}",
                rep.tau, rep.multiplicity, rep.quasi_homogeneous
            );
            if !rep.mu_at_least_tau {
                text += "\nwarning mu < tau";
            }
            let mut v = to_value(&rep);
            strip_meta(&mut v);
            Ok(Outcome::new(text, v))
        }
        Command::MultMu => {
            let (m, (mu, swapped)) = match germ(polys)? {
                Germ::Hyper(h) => (
                    multiplicity_hypersurface(&h)?,
                    (milnor_hypersurface(&h, &std_cfg)?, None),
                ),
                Germ::Curve(c) => (multiplicity_space_curve(&c, &std_cfg)?, curve_mu(&c, cfg)?),
            };
            let mut out = Outcome::new(
                format!("multiplicity {m}\nmu {}", mu_text(mu, swapped)),
                json!({ "multiplicity": m, "mu": mu }),
            );
            if let Some(s) = swapped {
                out.fields.insert("mu_swapped".into(), json!(s));
            }
            Ok(out)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// The caller adds ring metadata itself; the library copies would only
/// duplicate it, and `note` is replaced by the CLI's own flagging.
fn strip_meta(v: &mut Value) {
    if let Value::Object(m) = v {
        m.remove("characteristic");
        m.remove("ordering");
        m.remove("note");
    }
}
