use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::turing::{Line, Op, TuringMachine};
use crate::arith::primes;
use crate::error::{Error, Result};

/// The alphabet of first-order arithmetic: + · 0 1 ≐ ( ) ¬ → ∀ v ′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Plus,
    Times,
    Zero,
    One,
    Equals,
    LParen,
    RParen,
    Not,
    Implies,
    ForAll,
    Var,
    Tick,
}

impl Token {
    pub const ALL: [Token; 12] = [
        Token::Plus,
        Token::Times,
        Token::Zero,
        Token::One,
        Token::Equals,
        Token::LParen,
        Token::RParen,
        Token::Not,
        Token::Implies,
        Token::ForAll,
        Token::Var,
        Token::Tick,
    ];

    /// ¬ 0 ≐ 1 carry the codes 2 4 1 3; the rest count up from 5 in
    /// alphabet order.
    pub fn code(self) -> u32 {
        match self {
            Token::Equals => 1,
            Token::Not => 2,
            Token::One => 3,
            Token::Zero => 4,
            Token::Plus => 5,
            Token::Times => 6,
            Token::LParen => 7,
            Token::RParen => 8,
            Token::Implies => 9,
            Token::ForAll => 10,
            Token::Var => 11,
            Token::Tick => 12,
        }
    }

    pub fn from_code(c: u64) -> Option<Token> {
        Token::ALL.into_iter().find(|t| u64::from(t.code()) == c)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Token::Plus => "+",
            Token::Times => "·",
            Token::Zero => "0",
            Token::One => "1",
            Token::Equals => "≐",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::Not => "¬",
            Token::Implies => "→",
            Token::ForAll => "∀",
            Token::Var => "v",
            Token::Tick => "′",
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for Token {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "+" => Token::Plus,
            "·" | "*" => Token::Times,
            "0" => Token::Zero,
            "1" => Token::One,
            "≐" | "=" => Token::Equals,
            "(" => Token::LParen,
            ")" => Token::RParen,
            "¬" | "~" | "not" => Token::Not,
            "→" | "->" => Token::Implies,
            "∀" | "forall" => Token::ForAll,
            "v" => Token::Var,
            "′" | "'" => Token::Tick,
            _ => return Err(Error::UnknownToken(s.to_string())),
        })
    }
}

/// Splits a formula into tokens. Whitespace separates nothing and may be
/// used freely; multi-character spellings (->, not, forall) are matched
/// greedily.
pub fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut rest = s;
    'outer: while let Some(c) = rest.chars().next() {
        if c.is_whitespace() || c == ',' {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        for word in ["forall", "not", "->"] {
            if let Some(r) = rest.strip_prefix(word) {
                out.push(word.parse()?);
                rest = r;
                continue 'outer;
            }
        }
        out.push(c.to_string().parse()?);
        rest = &rest[c.len_utf8()..];
    }
    Ok(out)
}

/// A positive integer read as a product of prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoedelCode(pub BigUint);

impl fmt::Display for GoedelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for GoedelCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::arith::big_serde::uint(&self.0, s)
    }
}

fn encode_exponents(exps: impl IntoIterator<Item = u64>) -> GoedelCode {
    let mut value = BigUint::one();
    for (p, e) in primes().zip(exps) {
        value *= BigUint::from(p).pow(e as u32);
    }
    GoedelCode(value)
}

/// Exponents of 2, 3, 5, ... in order. Fails if a prime is skipped while
/// later primes still divide the code.
fn exponents(code: &GoedelCode) -> Result<Vec<u64>> {
    if code.0.is_zero() {
        return Err(Error::NotACode("0 is not a code".into()));
    }
    let mut n = code.0.clone();
    let mut out = Vec::new();
    for p in primes() {
        if n.is_one() {
            break;
        }
        let p = BigUint::from(p);
        let mut e = 0u64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e == 0 {
            return Err(Error::NotACode(format!("{code}: prime {p} is skipped")));
        }
        out.push(e);
    }
    Ok(out)
}

/// The product of the i-th primes raised to the codes of the tokens.
pub fn encode_tokens(tokens: &[Token]) -> GoedelCode {
    encode_exponents(tokens.iter().map(|t| u64::from(t.code())))
}

/// Parses token spellings and encodes them; unknown spellings fail.
pub fn encode_token_strs<S: AsRef<str>>(tokens: &[S]) -> Result<GoedelCode> {
    let toks = tokens.iter().map(|t| t.as_ref().parse()).collect::<Result<Vec<Token>>>()?;
    Ok(encode_tokens(&toks))
}

pub fn decode(code: &GoedelCode) -> Result<Vec<Token>> {
    exponents(code)?
        .into_iter()
        .map(|e| Token::from_code(e).ok_or_else(|| Error::NotACode(format!("{code}: exponent {e} is not a token code"))))
        .collect()
}

/// Codes for machine components, disjoint from the formula codes:
/// r, l, s get 13, 14, 15; the symbol a_i gets 16 + 2i; the state z_j
/// gets 17 + 2(j - 1).
pub mod machine_codes {
    pub const RIGHT: u64 = 13;
    pub const LEFT: u64 = 14;
    pub const STOP: u64 = 15;

    pub fn symbol(i: usize) -> u64 {
        16 + 2 * i as u64
    }

    pub fn state(j: usize) -> u64 {
        17 + 2 * (j as u64 - 1)
    }
}

fn line_block(line: &Line) -> [u64; 4] {
    use machine_codes::*;
    let op = match line.op {
        Op::Write(i) => symbol(i),
        Op::Right => RIGHT,
        Op::Left => LEFT,
        Op::Stop => STOP,
    };
    [state(line.state), symbol(line.read), op, state(line.next)]
}

/// Each line becomes the block (state, read, op, next) of four codes; the
/// blocks are concatenated and prime-power coded.
pub fn encode_machine(machine: &TuringMachine) -> GoedelCode {
    encode_exponents(machine.program().iter().flat_map(line_block))
}

fn state_of(c: u64) -> Option<usize> {
    (c >= 17 && c % 2 == 1).then(|| ((c - 17) / 2 + 1) as usize)
}

fn symbol_of(c: u64) -> Option<usize> {
    (c >= 16 && c % 2 == 0).then(|| ((c - 16) / 2) as usize)
}

pub fn decode_machine(code: &GoedelCode) -> Result<TuringMachine> {
    use machine_codes::*;
    let exps = exponents(code)?;
    if exps.len() % 4 != 0 {
        return Err(Error::NotACode(format!("{code}: {} exponents is not a whole number of lines", exps.len())));
    }
    let bad = |what: &str, e: u64| Error::NotACode(format!("{code}: exponent {e} is not a {what} code"));
    let mut program = Vec::new();
    for block in exps.chunks(4) {
        let state = state_of(block[0]).ok_or_else(|| bad("state", block[0]))?;
        let read = symbol_of(block[1]).ok_or_else(|| bad("symbol", block[1]))?;
        let op = match block[2] {
            RIGHT => Op::Right,
            LEFT => Op::Left,
            STOP => Op::Stop,
            c => Op::Write(symbol_of(c).ok_or_else(|| bad("operation", c))?),
        };
        let next = state_of(block[3]).ok_or_else(|| bad("state", block[3]))?;
        program.push(Line { state, read, op, next });
    }
    TuringMachine::new(program).map_err(|e| Error::NotACode(format!("{code}: {e}")))
}
