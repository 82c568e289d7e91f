//! Deterministic one-way-tape Turing machines over the unary alphabet.
//!
//! A machine is a total transition table over `Q x {1, blank}`; the final
//! state `F` is a sink reached only through a transition. Integers travel
//! in unary: the value x is a run of x+1 ones, vector entries separated
//! by single blanks. A proper final configuration has the head back on
//! cell 1 and the tape holding exactly the output run.
//!
//! Moving left from cell 1 is a machine fault, never a silent clamp: a
//! clamp would change computed functions invisibly.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    One,
    Blank,
}

impl Symbol {
    fn as_char(self) -> char {
        match self {
            Symbol::One => '1',
            Symbol::Blank => '_',
        }
    }

    fn index(self) -> usize {
        match self {
            Symbol::One => 0,
            Symbol::Blank => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
}

pub type StateId = u16;

/// Control state of a configuration: a machine state or the final sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Control {
    State(StateId),
    Final,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub next: Control,
    pub movement: Move,
    pub write: Symbol,
}

/// One-way infinite tape: an explicit prefix with implicit blanks beyond.
/// Canonical form keeps no trailing blanks, so equal tapes compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tape(Vec<Symbol>);

impl Tape {
    pub fn empty() -> Self {
        Tape(Vec::new())
    }

    pub fn from_symbols(mut symbols: Vec<Symbol>) -> Self {
        while symbols.last() == Some(&Symbol::Blank) {
            symbols.pop();
        }
        Tape(symbols)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => symbols.push(Symbol::One),
                '_' => symbols.push(Symbol::Blank),
                other => {
                    return Err(Error::Usage(format!(
                        "tape position {}: expected '1' or '_', found {:?}",
                        i + 1,
                        other
                    )))
                }
            }
        }
        Ok(Tape::from_symbols(symbols))
    }

    /// Cell contents, 1-based.
    pub fn get(&self, k: u64) -> Symbol {
        debug_assert!(k >= 1);
        self.0.get((k - 1) as usize).copied().unwrap_or(Symbol::Blank)
    }

    pub fn set(&self, k: u64, symbol: Symbol) -> Tape {
        let idx = (k - 1) as usize;
        let mut cells = self.0.clone();
        if idx >= cells.len() {
            if symbol == Symbol::Blank {
                return self.clone();
            }
            cells.resize(idx + 1, Symbol::Blank);
        }
        cells[idx] = symbol;
        Tape::from_symbols(cells)
    }

    /// Index of the rightmost one, or 0 when the tape is all blank.
    pub fn extent(&self) -> u64 {
        self.0.len() as u64
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Instantaneous description: control state, 1-based head position, tape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: Control,
    pub head: u64,
    pub tape: Tape,
}

impl Configuration {
    /// Final configurations have the head parked back on cell 1.
    pub fn is_final(&self) -> bool {
        self.state == Control::Final && self.head == 1
    }

    pub fn render(&self, machine: &Machine) -> String {
        format!("state={} head={} tape={}", machine.state_name(self.state), self.head, self.tape)
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Halted,
    BudgetExhausted,
}

/// Full configuration sequence of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computation {
    pub configs: Vec<Configuration>,
    pub status: RunStatus,
}

impl Computation {
    pub fn halted(&self) -> bool {
        self.status == RunStatus::Halted
    }

    pub fn steps(&self) -> u64 {
        (self.configs.len() - 1) as u64
    }

    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("computation is never empty")
    }

    /// Largest cell index touched: head positions and tape extents.
    pub fn halt_space(&self) -> u64 {
        self.configs
            .iter()
            .map(|c| c.head.max(c.tape.extent()))
            .max()
            .unwrap_or(1)
    }
}

#[derive(Debug, Clone)]
pub struct Machine {
    name: String,
    arity: Option<u32>,
    kalmar_m: Option<u32>,
    states: Vec<String>,
    start: StateId,
    rules: Vec<[Rule; 2]>,
    digest: String,
}

#[derive(Debug, Deserialize, Serialize)]
struct RawTransition {
    state: String,
    read: String,
    next: String,
    #[serde(rename = "move")]
    movement: i8,
    write: String,
}

#[derive(Debug, Deserialize, Serialize)]
struct RawMachine {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    arity: Option<u32>,
    #[serde(default)]
    kalmar_m: Option<u32>,
    states: Vec<String>,
    start: String,
    transitions: Vec<RawTransition>,
}

fn parse_symbol(s: &str, at: &str) -> Result<Symbol> {
    match s {
        "1" => Ok(Symbol::One),
        "_" => Ok(Symbol::Blank),
        other => Err(Error::MachineFile(format!("{at}: symbol must be \"1\" or \"_\", found {other:?}"))),
    }
}

impl Machine {
    pub fn load_str(text: &str) -> Result<Machine> {
        let raw: RawMachine = serde_json::from_str(text)
            .map_err(|e| Error::MachineFile(format!("invalid JSON: {e}")))?;
        Machine::from_raw(raw)
    }

    pub fn load_path(path: &Path) -> Result<Machine> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MachineFile(format!("{}: {e}", path.display())))?;
        let mut machine = Machine::load_str(&text)?;
        if machine.name.is_empty() {
            machine.name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        Ok(machine)
    }

    fn from_raw(raw: RawMachine) -> Result<Machine> {
        if raw.states.is_empty() {
            return Err(Error::MachineFile("states: must not be empty".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, s) in raw.states.iter().enumerate() {
            if s == "F" {
                return Err(Error::MachineFile(format!(
                    "states[{i}]: \"F\" is reserved for the final state and must not be listed"
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::MachineFile(format!("states[{i}]: duplicate state {s:?}")));
            }
        }
        if raw.states.len() > StateId::MAX as usize {
            return Err(Error::MachineFile("states: too many states".into()));
        }
        let state_id = |name: &str| -> Option<StateId> {
            raw.states.iter().position(|s| s == name).map(|i| i as StateId)
        };
        let start = state_id(&raw.start).ok_or_else(|| {
            Error::MachineFile(format!("start: unknown state {:?}", raw.start))
        })?;

        let placeholder = Rule { next: Control::Final, movement: Move::Right, write: Symbol::Blank };
        let mut rules: Vec<[Option<Rule>; 2]> = vec![[None, None]; raw.states.len()];
        for (i, t) in raw.transitions.iter().enumerate() {
            let at = format!("transitions[{i}]");
            if t.state == "F" {
                return Err(Error::MachineFile(format!("{at}: the final state has no outgoing transitions")));
            }
            let from = state_id(&t.state)
                .ok_or_else(|| Error::MachineFile(format!("{at}: unknown state {:?}", t.state)))?;
            let read = parse_symbol(&t.read, &format!("{at}.read"))?;
            let next = if t.next == "F" {
                Control::Final
            } else {
                Control::State(state_id(&t.next).ok_or_else(|| {
                    Error::MachineFile(format!("{at}: unknown next state {:?}", t.next))
                })?)
            };
            let movement = match t.movement {
                -1 => Move::Left,
                1 => Move::Right,
                other => {
                    return Err(Error::MachineFile(format!("{at}: move must be -1 or +1, found {other}")))
                }
            };
            let write = parse_symbol(&t.write, &format!("{at}.write"))?;
            let slot = &mut rules[from as usize][read.index()];
            if slot.is_some() {
                return Err(Error::MachineFile(format!(
                    "{at}: duplicate transition for ({:?}, {:?})",
                    t.state, t.read
                )));
            }
            *slot = Some(Rule { next, movement, write });
        }
        let mut table = vec![[placeholder; 2]; raw.states.len()];
        for (sid, pair) in rules.iter().enumerate() {
            for (sym, rule) in pair.iter().enumerate() {
                let read = if sym == 0 { "1" } else { "_" };
                match rule {
                    Some(r) => table[sid][sym] = *r,
                    None => {
                        return Err(Error::MachineFile(format!(
                            "state {:?}: missing transition for read {:?}",
                            raw.states[sid], read
                        )))
                    }
                }
            }
        }

        let mut machine = Machine {
            name: raw.name.unwrap_or_default(),
            arity: raw.arity,
            kalmar_m: raw.kalmar_m,
            states: raw.states,
            start,
            rules: table,
            digest: String::new(),
        };
        machine.digest = machine.compute_digest();
        Ok(machine)
    }

    fn compute_digest(&self) -> String {
        let mut canon = String::new();
        canon.push_str(&self.states.join(","));
        canon.push(';');
        canon.push_str(&self.states[self.start as usize]);
        for (sid, pair) in self.rules.iter().enumerate() {
            for (sym, rule) in pair.iter().enumerate() {
                let next = match rule.next {
                    Control::Final => "F".to_string(),
                    Control::State(id) => self.states[id as usize].clone(),
                };
                let mv = if rule.movement == Move::Left { "-1" } else { "+1" };
                canon.push_str(&format!(
                    ";{}:{}->{}:{}:{}",
                    self.states[sid],
                    if sym == 0 { '1' } else { '_' },
                    next,
                    mv,
                    rule.write.as_char()
                ));
            }
        }
        format!("{:016x}", fnv1a64(canon.as_bytes()))
    }

    pub fn name(&self) -> &str {
        if self.name.is_empty() {
            "machine"
        } else {
            &self.name
        }
    }

    pub fn arity(&self) -> Option<u32> {
        self.arity
    }

    pub fn kalmar_m(&self) -> Option<u32> {
        self.kalmar_m
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn state_name(&self, control: Control) -> &str {
        match control {
            Control::Final => "F",
            Control::State(id) => &self.states[id as usize],
        }
    }

    pub fn rule(&self, state: StateId, read: Symbol) -> &Rule {
        &self.rules[state as usize][read.index()]
    }

    pub fn initial_config(&self, input: &[u64]) -> Result<Configuration> {
        Ok(Configuration { state: Control::State(self.start), head: 1, tape: encode_input(input)? })
    }

    /// Apply one transition. Faults when the head would leave the tape.
    pub fn step(&self, config: &Configuration) -> Result<Configuration> {
        let state = match config.state {
            Control::Final => return Err(Error::StepFinal),
            Control::State(id) => id,
        };
        let read = config.tape.get(config.head);
        let rule = self.rule(state, read);
        let head = match rule.movement {
            Move::Right => config.head + 1,
            Move::Left => {
                if config.head == 1 {
                    return Err(Error::HeadUnderflow { step: 0 });
                }
                config.head - 1
            }
        };
        Ok(Configuration { state: rule.next, head, tape: config.tape.set(config.head, rule.write) })
    }

    /// Run from the encoded input until the final state or the budget.
    pub fn run(&self, input: &[u64], max_steps: u64) -> Result<Computation> {
        self.run_from(self.initial_config(input)?, max_steps)
    }

    pub fn run_from(&self, initial: Configuration, max_steps: u64) -> Result<Computation> {
        let mut configs = vec![initial];
        for step in 0..max_steps {
            let current = configs.last().unwrap();
            if current.state == Control::Final {
                return Ok(Computation { configs, status: RunStatus::Halted });
            }
            let next = self.step(current).map_err(|e| match e {
                Error::HeadUnderflow { .. } => Error::HeadUnderflow { step: step + 1 },
                other => other,
            })?;
            configs.push(next);
        }
        let status = if configs.last().unwrap().state == Control::Final {
            RunStatus::Halted
        } else {
            RunStatus::BudgetExhausted
        };
        Ok(Computation { configs, status })
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Length of the unary encoding: sum of entries plus 2n-1.
pub fn input_length(input: &[u64]) -> Result<u64> {
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(input.iter().sum::<u64>() + 2 * input.len() as u64 - 1)
}

/// Unary tape for an input vector: runs of x_i + 1 ones, single blanks
/// between entries, starting at cell 1.
pub fn encode_input(input: &[u64]) -> Result<Tape> {
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut symbols = Vec::new();
    for (i, &x) in input.iter().enumerate() {
        if i > 0 {
            symbols.push(Symbol::Blank);
        }
        symbols.extend(std::iter::repeat(Symbol::One).take(x as usize + 1));
    }
    Ok(Tape::from_symbols(symbols))
}

/// The tape representing the output integer y: ones on cells 1..=y+1.
pub fn final_tape(y: u64) -> Tape {
    Tape::from_symbols(vec![Symbol::One; y as usize + 1])
}

/// Read an output integer back off a tape: a single run of ones starting
/// at cell 1 decodes to its length minus one, anything else is rejected.
pub fn decode_output(tape: &Tape) -> Option<u64> {
    let cells = tape.symbols();
    if cells.is_empty() || cells.iter().any(|&s| s == Symbol::Blank) {
        return None;
    }
    Some(cells.len() as u64 - 1)
}

/// Parse a tape word back to the integer vector it encodes, if valid.
pub fn decode_word(tape: &Tape) -> Option<Vec<u64>> {
    let cells = tape.symbols();
    if cells.is_empty() || cells.first() == Some(&Symbol::Blank) || cells.last() == Some(&Symbol::Blank) {
        return None;
    }
    let mut values = Vec::new();
    let mut run = 0u64;
    for &s in cells {
        match s {
            Symbol::One => run += 1,
            Symbol::Blank => {
                if run == 0 {
                    return None; // adjacent blanks
                }
                values.push(run - 1);
                run = 0;
            }
        }
    }
    values.push(run - 1);
    Some(values)
}

/// Generous default budget: ten times 2^(input length).
pub fn default_max_steps(input: &[u64]) -> Result<u64> {
    let len = input_length(input)?;
    Ok(1u64.checked_shl(len.min(60) as u32).unwrap_or(u64::MAX).saturating_mul(10))
}

/// The shipped machine library. Each definition lives in `machines/` as a
/// plain data file; the arithmetic function it computes is pinned by the
/// oracle tests below.
pub mod library {
    use super::Machine;
    use std::sync::OnceLock;

    pub const SUCC_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/machines/succ.json"));
    pub const ADD_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/machines/add.json"));
    pub const ZERO_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/machines/zero.json"));
    pub const PROJ_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/machines/proj.json"));

    fn parse(text: &str) -> Machine {
        Machine::load_str(text).expect("shipped machine definitions are valid")
    }

    pub fn succ() -> &'static Machine {
        static M: OnceLock<Machine> = OnceLock::new();
        M.get_or_init(|| parse(SUCC_JSON))
    }

    pub fn add() -> &'static Machine {
        static M: OnceLock<Machine> = OnceLock::new();
        M.get_or_init(|| parse(ADD_JSON))
    }

    pub fn zero() -> &'static Machine {
        static M: OnceLock<Machine> = OnceLock::new();
        M.get_or_init(|| parse(ZERO_JSON))
    }

    pub fn proj() -> &'static Machine {
        static M: OnceLock<Machine> = OnceLock::new();
        M.get_or_init(|| parse(PROJ_JSON))
    }

    pub fn all() -> Vec<&'static Machine> {
        vec![succ(), add(), zero(), proj()]
    }

    pub fn by_name(name: &str) -> Option<&'static Machine> {
        match name {
            "succ" => Some(succ()),
            "add" => Some(add()),
            "zero" => Some(zero()),
            "proj" => Some(proj()),
            _ => None,
        }
    }
}

// keep the lock type referenced even when the library feature set shrinks
#[allow(unused)]
type LibraryLock = OnceLock<Machine>;
