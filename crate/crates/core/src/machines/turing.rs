use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// What a program line does after matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    /// Write the symbol a_i (a_0 is the empty letter).
    Write(usize),
    Right,
    Left,
    Stop,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Write(i) => write!(f, "w:a{i}"),
            Op::Right => write!(f, "r"),
            Op::Left => write!(f, "l"),
            Op::Stop => write!(f, "s"),
        }
    }
}

fn parse_indexed(s: &str, prefix: char, what: &str) -> Result<usize> {
    s.strip_prefix(prefix)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad {what} `{s}`, expected {prefix}<n>")))
}

pub(crate) fn parse_symbol(s: &str) -> Result<usize> {
    parse_indexed(s, 'a', "symbol")
}

fn parse_state(s: &str) -> Result<usize> {
    let j = parse_indexed(s, 'z', "state")?;
    if j == 0 {
        return Err(Error::Parse("states are numbered from z1".into()));
    }
    Ok(j)
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(Op::Right),
            "l" => Ok(Op::Left),
            "s" => Ok(Op::Stop),
            _ => match s.strip_prefix("w:") {
                Some(sym) => Ok(Op::Write(parse_symbol(sym)?)),
                None => Err(Error::Parse(format!("bad operation `{s}`"))),
            },
        }
    }
}

/// "z a b z'": in state z reading a, do b and go to z'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    pub state: usize,
    pub read: usize,
    pub op: Op,
    pub next: usize,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{} a{} {} z{}", self.state, self.read, self.op, self.next)
    }
}

impl FromStr for Line {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [state, read, op, next] = parts[..] else {
            return Err(Error::Parse(format!("expected `state read op next`, got `{s}`")));
        };
        Ok(Line {
            state: parse_state(state)?,
            read: parse_symbol(read)?,
            op: op.parse()?,
            next: parse_state(next)?,
        })
    }
}

/// A deterministic machine over a_0..a_n with states z_1..z_m, started in z_1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuringMachine {
    program: Vec<Line>,
    #[serde(skip)]
    table: HashMap<(usize, usize), usize>,
}

impl TuringMachine {
    pub fn new(program: Vec<Line>) -> Result<Self> {
        let mut table = HashMap::new();
        for (i, line) in program.iter().enumerate() {
            if table.insert((line.state, line.read), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "two program lines for state z{} reading a{}",
                    line.state, line.read
                )));
            }
        }
        Ok(Self { program, table })
    }

    pub fn program(&self) -> &[Line] {
        &self.program
    }

    /// Largest symbol index mentioned.
    pub fn alphabet_size(&self) -> usize {
        self.program
            .iter()
            .flat_map(|l| [l.read, if let Op::Write(i) = l.op { i } else { 0 }])
            .max()
            .unwrap_or(0)
    }

    pub fn state_count(&self) -> usize {
        self.program.iter().flat_map(|l| [l.state, l.next]).max().unwrap_or(1)
    }

    pub fn rule(&self, state: usize, read: usize) -> Option<&Line> {
        self.table.get(&(state, read)).map(|&i| &self.program[i])
    }

    pub fn run(&self, input: &TapeWord, max_steps: u64) -> Outcome {
        let mut config = TapeConfiguration::start(input);
        while config.steps < max_steps {
            match self.step(&mut config) {
                StepResult::Continue => {}
                StepResult::Halted => {
                    return Outcome::Halted {
                        tape: config.word(),
                        steps: config.steps,
                    }
                }
                StepResult::NoRule => return Outcome::NoRule { configuration: config },
            }
        }
        Outcome::Running { configuration: config }
    }

    /// Applies one program line. The stop operation counts as a step.
    pub fn step(&self, config: &mut TapeConfiguration) -> StepResult {
        let read = config.read();
        let Some(line) = self.rule(config.state, read) else {
            return StepResult::NoRule;
        };
        config.steps += 1;
        config.state = line.next;
        match line.op {
            Op::Write(i) => config.write(i),
            Op::Right => config.head += 1,
            Op::Left => config.head -= 1,
            Op::Stop => return StepResult::Halted,
        }
        StepResult::Continue
    }
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.program {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for TuringMachine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut program = Vec::new();
        for raw in s.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if !line.is_empty() {
                program.push(line.parse()?);
            }
        }
        Self::new(program)
    }
}

/// Finite tape content, leftmost symbol at cell 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TapeWord(pub Vec<usize>);

impl TapeWord {
    pub fn empty() -> Self {
        Self::default()
    }
}

impl fmt::Display for TapeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("a{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for TapeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_symbol)
            .collect::<Result<Vec<_>>>()
            .map(TapeWord)
    }
}

impl Serialize for TapeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sparse tape, head position, state and step count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TapeConfiguration {
    pub cells: BTreeMap<i64, usize>,
    pub head: i64,
    pub state: usize,
    pub steps: u64,
}

impl TapeConfiguration {
    pub fn start(input: &TapeWord) -> Self {
        let cells = input
            .0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| (i as i64, s))
            .collect();
        Self {
            cells,
            head: 0,
            state: 1,
            steps: 0,
        }
    }

    pub fn read(&self) -> usize {
        self.cells.get(&self.head).copied().unwrap_or(0)
    }

    fn write(&mut self, symbol: usize) {
        if symbol == 0 {
            self.cells.remove(&self.head);
        } else {
            self.cells.insert(self.head, symbol);
        }
    }

    /// Cells from the leftmost to the rightmost nonempty one.
    pub fn word(&self) -> TapeWord {
        match (self.cells.keys().next(), self.cells.keys().next_back()) {
            (Some(&lo), Some(&hi)) => TapeWord((lo..=hi).map(|i| self.cells.get(&i).copied().unwrap_or(0)).collect()),
            _ => TapeWord::empty(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepResult {
    Continue,
    Halted,
    NoRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Halted { tape: TapeWord, steps: u64 },
    Running { configuration: TapeConfiguration },
    NoRule { configuration: TapeConfiguration },
}

impl Outcome {
    pub fn halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }
}
