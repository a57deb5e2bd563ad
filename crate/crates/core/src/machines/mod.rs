//! Turing machines, Goedel coding of formulas and programs, and the
//! bounded lister of halting (machine, input) pairs.

mod goedel;
mod turing;

use num_bigint::BigUint;

pub use goedel::{
    decode, decode_machine, encode_machine, encode_token_strs, encode_tokens, machine_codes, tokenize, GoedelCode,
    Token,
};
pub use turing::{Line, Op, Outcome, StepResult, TapeConfiguration, TapeWord, TuringMachine};

/// 2^i 3^j for every machine i and input j (both counted from 1) such that
/// machine i halts on input j within `step_bound` steps, ascending.
pub fn halting_lister(machines: &[TuringMachine], inputs: &[TapeWord], step_bound: u64) -> Vec<BigUint> {
    let mut out = Vec::new();
    for (i, m) in machines.iter().enumerate() {
        for (j, w) in inputs.iter().enumerate() {
            if m.run(w, step_bound).halted() {
                out.push(BigUint::from(2u32).pow(i as u32 + 1) * BigUint::from(3u32).pow(j as u32 + 1));
            }
        }
    }
    out.sort();
    out
}
