use std::fs;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Map, Value};

use qdef::arith::{factor_rational, four_squares, generalized_legendre, legendre, valuation};
use qdef::definability::{
    self as defn, KoenigsmannConfig, PlaceSet, RingKind, SemiLocalRing,
};
use qdef::dprm;
use qdef::forms::{self, DiagonalForm};
use qdef::machines::{self, GoedelCode, TapeWord, TuringMachine};
use qdef::padic::{self, IntPoly, PAdicNumber};
use qdef::{Error, Place, Prime, Rational, Result};

use crate::args::{Command, FormTarget, GodelOp, PadicOp, TmOp};

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdict: Option<bool>,
    pub value: Value,
    pub trace: Option<Value>,
    pub elapsed: f64,
}

impl CommandResult {
    fn new(command: &str, inputs: Value) -> Self {
        let Value::Object(inputs) = inputs else {
            unreachable!("inputs are always an object")
        };
        Self {
            command: command.to_string(),
            inputs,
            verdict: None,
            value: Value::Null,
            trace: None,
            elapsed: 0.0,
        }
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }

    fn value(mut self, v: impl Serialize) -> Self {
        self.value = to_json(v);
        self
    }

    fn trace(mut self, t: impl Serialize) -> Self {
        self.trace = Some(to_json(t));
        self
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn rat(s: &str) -> Result<Rational> {
    s.parse()
}

fn prime(s: &str) -> Result<Prime> {
    s.trim().parse()
}

fn place(s: &str) -> Result<Place> {
    s.trim().parse()
}

fn uint(s: &str) -> Result<BigUint> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not a nonnegative integer: `{s}`")))
}

fn int(s: &str) -> Result<BigInt> {
    s.trim()
        .replace('\u{2212}', "-")
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: `{s}`")))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn machine_file(path: &Path) -> Result<TuringMachine> {
    read_file(path)?.parse()
}

fn ring_value(ring: &SemiLocalRing) -> Value {
    json!({
        "places": ring.places().places(),
        "whole_field": ring.is_whole_field(),
        "ring": ring.to_string(),
    })
}

fn form_target(t: &FormTarget) -> Result<(DiagonalForm, Rational)> {
    Ok((t.form.parse()?, rat(&t.value)?))
}

pub fn run(cmd: &Command) -> Result<CommandResult> {
    let name = cmd.name();
    let name = name.as_str();
    Ok(match cmd {
        Command::Valuation { x, p } => {
            let v = valuation(&rat(x)?, &prime(p)?);
            CommandResult::new(name, json!({"x": x, "p": p})).value(v.to_string())
        }
        Command::Factor { x } => {
            let f = factor_rational(&rat(x)?)?;
            CommandResult::new(name, json!({"x": x})).value(f.to_string()).trace(&f)
        }
        Command::Legendre { a, l } => {
            let v = legendre(&int(a)?, &prime(l)?)?;
            CommandResult::new(name, json!({"a": a, "l": l})).value(v)
        }
        Command::GenLegendre { p, l } => {
            let v = generalized_legendre(&rat(p)?, &prime(l)?)?;
            CommandResult::new(name, json!({"p": p, "l": l})).value(v)
        }
        Command::FourSquares { n } => {
            let xs = four_squares(&uint(n)?);
            let xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            CommandResult::new(name, json!({"n": n})).value(xs)
        }
        Command::Padic { op } => padic_command(name, op)?,
        Command::Hilbert { a, b, place: v } => {
            let s = forms::hilbert_symbol(&rat(a)?, &rat(b)?, &place(v)?)?;
            CommandResult::new(name, json!({"a": a, "b": b, "place": v})).value(s)
        }
        Command::Represents { target, trace } => {
            let (q, a) = form_target(target)?;
            let g = forms::represents(&q, &a)?;
            let r = CommandResult::new(name, json!({"form": q.to_string(), "value": a}))
                .verdict(g.representable)
                .value(g.representable);
            if *trace {
                r.trace(&g.trace)
            } else {
                r
            }
        }
        Command::Witness { target, height } => {
            let (q, a) = form_target(target)?;
            let w = forms::witness_search(&q, &a, &BigUint::from(*height));
            CommandResult::new(name, json!({"form": q.to_string(), "value": a, "height": height}))
                .verdict(w.is_some())
                .value(w)
        }
        Command::RobinsonPhi { a, b, k } => {
            let v = forms::robinson_phi(&rat(a)?, &rat(b)?, &rat(k)?)?;
            CommandResult::new(name, json!({"a": a, "b": b, "k": k})).verdict(v).value(v)
        }
        Command::Selmer { places, height } => {
            let r = forms::selmer_demo(*places, *height);
            CommandResult::new(name, json!({"places": places, "height": height}))
                .verdict(r.all_local_pass && r.global_witness.is_none())
                .value(json!({
                    "equation": r.equation,
                    "all_local_pass": r.all_local_pass,
                    "global_witness": r.global_witness,
                    "global_status": r.global_status,
                }))
                .trace(&r.local_checks)
        }
        Command::Delta { a, b } => {
            let d = defn::delta(&rat(a)?, &rat(b)?)?;
            CommandResult::new(name, json!({"a": a, "b": b})).value(d.places())
        }
        Command::TMember { t, a, b } => {
            let m = defn::t_membership(&rat(t)?, &rat(a)?, &rat(b)?)?;
            CommandResult::new(name, json!({"t": t, "a": a, "b": b}))
                .verdict(m.member)
                .value(m.member)
                .trace(json!({"delta": m.delta.places(), "violated_place": m.violated_place}))
        }
        Command::SMember { s, a, b } => {
            let v = defn::s_membership(&rat(s)?, &rat(a)?, &rat(b)?)?;
            CommandResult::new(name, json!({"s": s, "a": a, "b": b})).verdict(v).value(v)
        }
        Command::Ring { kind, p, q } => {
            let pr = rat(p)?;
            let ring = match (kind.to_ascii_lowercase().as_str(), q) {
                ("r1", Some(q)) => defn::semilocal_ring_1(&pr, &rat(q)?)?,
                ("r1", None) => return Err(Error::InvalidArgument("ring r1 needs p and q".into())),
                (_, Some(_)) => return Err(Error::InvalidArgument(format!("ring {kind} takes one parameter"))),
                (k, None) => defn::semilocal_ring(k.parse::<RingKind>()?, &pr)?,
            };
            CommandResult::new(name, json!({"kind": kind, "p": p, "q": q})).value(ring_value(&ring))
        }
        Command::PhiK { p, k } => {
            let v = defn::phi_k_membership(&rat(p)?, *k)?;
            CommandResult::new(name, json!({"p": p, "k": k})).verdict(v).value(v)
        }
        Command::Psi { p, q } => {
            let v = defn::psi_membership(&rat(p)?, &rat(q)?)?;
            CommandResult::new(name, json!({"p": p, "q": q})).verdict(v).value(v)
        }
        Command::Tilde { x, places } => {
            let primes = places
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(prime)
                .collect::<Result<Vec<_>>>()?;
            let ring = SemiLocalRing::new(PlaceSet::new(primes, false));
            let v = defn::jacobson_tilde_membership(&rat(x)?, &ring)?;
            CommandResult::new(name, json!({"x": x, "places": places}))
                .verdict(v)
                .value(v)
                .trace(ring_value(&ring))
        }
        Command::ZCertificate { t, samples, q_bound } => {
            let config = KoenigsmannConfig {
                samples_per_family: *samples,
                q_search_bound: *q_bound,
                ..KoenigsmannConfig::default()
            };
            let c = defn::koenigsmann_certificate_with(&rat(t)?, &config)?;
            CommandResult::new(name, json!({"t": t, "samples": samples, "q_bound": q_bound}))
                .verdict(c.verdict == defn::Verdict::Integer)
                .value(&c.verdict)
                .trace(&c)
        }
        Command::PoonenExclude { t, grid } => {
            let tr = rat(t)?;
            let (a, b) = defn::poonen_exclusion_witness_with_bound(&tr, *grid)?;
            let m = defn::t_membership(&tr, &a, &b)?;
            CommandResult::new(name, json!({"t": t, "grid": grid}))
                .value(json!({"a": a, "b": b}))
                .trace(json!({"delta": m.delta.places(), "violated_place": m.violated_place}))
        }
        Command::Pell { a, count } => {
            let sols = dprm::pell_solutions(&uint(a)?, *count)?;
            let rows: Vec<Value> = sols
                .iter()
                .map(|s| json!({"m": s.m, "x": to_json_big(&s.x), "y": to_json_big(&s.y)}))
                .collect();
            CommandResult::new(name, json!({"a": a, "count": count})).value(rows)
        }
        Command::J { x, y, a } => {
            let v = dprm::j_relation(&int(x)?, &int(y)?, &int(a)?)?;
            CommandResult::new(name, json!({"x": x, "y": y, "a": a})).verdict(v).value(v)
        }
        Command::Growth { a, count, k_bound } => {
            let r = dprm::growth_report(&uint(a)?, *count, *k_bound)?;
            CommandResult::new(name, json!({"a": a, "count": count, "k_bound": k_bound}))
                .value(&r.orientations)
                .trace(&r.pairs)
        }
        Command::Tm { op: TmOp::Run { file, input, steps } } => {
            let m = machine_file(file)?;
            let w: TapeWord = input.parse()?;
            let out = m.run(&w, *steps);
            CommandResult::new(name, json!({"file": file, "input": input, "steps": steps}))
                .verdict(out.halted())
                .value(&out)
        }
        Command::Godel { op } => godel_command(name, op)?,
        Command::HaltingList { machines: files, inputs, steps } => {
            let ms = files.iter().map(|f| machine_file(f)).collect::<Result<Vec<_>>>()?;
            let words = if inputs.is_empty() {
                vec![TapeWord::empty()]
            } else {
                inputs.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?
            };
            let codes = machines::halting_lister(&ms, &words, *steps);
            let codes: Vec<Value> = codes.iter().map(to_json_big).collect();
            CommandResult::new(name, json!({"machines": files, "inputs": inputs, "steps": steps})).value(codes)
        }
    })
}

fn to_json_big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn padic_value(x: &PAdicNumber) -> Value {
    let mut v = to_json(x);
    v["display"] = json!(x.to_string());
    v
}

fn padic_command(name: &str, op: &PadicOp) -> Result<CommandResult> {
    Ok(match op {
        PadicOp::Embed { x, pp } => {
            let n = PAdicNumber::embed(&rat(x)?, &prime(&pp.prime)?, pp.prec)?;
            CommandResult::new(name, json!({"x": x, "p": pp.prime, "prec": pp.prec})).value(padic_value(&n))
        }
        PadicOp::Add { x, y, pp } | PadicOp::Mul { x, y, pp } => {
            let p = prime(&pp.prime)?;
            let a = PAdicNumber::embed(&rat(x)?, &p, pp.prec)?;
            let b = PAdicNumber::embed(&rat(y)?, &p, pp.prec)?;
            let n = if matches!(op, PadicOp::Add { .. }) { a.add(&b)? } else { a.mul(&b)? };
            CommandResult::new(name, json!({"x": x, "y": y, "p": pp.prime, "prec": pp.prec})).value(padic_value(&n))
        }
        PadicOp::Hensel { poly, root, pp } => {
            let f: IntPoly = poly.parse()?;
            let n = padic::hensel_lift(&f, &int(root)?, &prime(&pp.prime)?, pp.prec)?;
            let residue = n.to_residue(pp.prec)?;
            CommandResult::new(name, json!({"poly": poly, "root": root, "p": pp.prime, "prec": pp.prec}))
                .value(padic_value(&n))
                .trace(json!({"residue": residue.to_string()}))
        }
        PadicOp::SquareClass { x, prime: p } => {
            let c = padic::square_class(&rat(x)?, &prime(p)?)?;
            CommandResult::new(name, json!({"x": x, "p": p}))
                .verdict(c.is_square())
                .value(c.to_string())
        }
        PadicOp::ZpMember { x, prime: p } => {
            let (xr, pr) = (rat(x)?, prime(p)?);
            let m = if pr.is_two() {
                padic::is_z2_member_cubic(&xr)?
            } else {
                padic::is_zp_member(&xr, &pr)?
            };
            CommandResult::new(name, json!({"x": x, "p": p}))
                .verdict(m.member)
                .value(m.member)
                .trace(&m)
        }
    })
}

fn godel_command(name: &str, op: &GodelOp) -> Result<CommandResult> {
    Ok(match op {
        GodelOp::Encode { formula } => {
            let tokens = machines::tokenize(formula)?;
            let code = machines::encode_tokens(&tokens);
            CommandResult::new(name, json!({"formula": formula}))
                .value(to_json_big(&code.0))
                .trace(tokens.iter().map(|t| json!({"token": t, "code": t.code()})).collect::<Vec<_>>())
        }
        GodelOp::Decode { code } => {
            let c = GoedelCode(uint(code)?);
            let tokens = machines::decode(&c)?;
            let text: String = tokens.iter().map(|t| t.symbol()).collect();
            CommandResult::new(name, json!({"code": code})).value(text).trace(&tokens)
        }
        GodelOp::EncodeMachine { file } => {
            let m = machine_file(file)?;
            let code = machines::encode_machine(&m);
            CommandResult::new(name, json!({"file": file})).value(to_json_big(&code.0))
        }
        GodelOp::DecodeMachine { code } => {
            let m = machines::decode_machine(&GoedelCode(uint(code)?))?;
            CommandResult::new(name, json!({"code": code}))
                .value(m.to_string())
                .trace(m.program())
        }
    })
}
