use core::fmt;
use core::str::FromStr;

use alloc::format;

use super::AlgebraError;

/// The fixed, global variable alphabet.
///
/// The declaration order is the monomial order: parameters, r-matrix
/// coefficients, the quantum parameter `κ`, group-chart coordinates and
/// then local-chart coordinates (`u = e^{-x}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A,
    B,
    C,
    D,
    E,
    F,
    R12,
    R13,
    R23,
    Kappa,
    X,
    Y,
    Z,
    /// `u = e^{-x}` in the local chart.
    U,
    /// Local `y`.
    LocalY,
    /// Local `z`.
    LocalZ,
    /// Local `x`.
    LocalX,
}

impl Symbol {
    pub const PARAMS: [Symbol; 6] = [
        Symbol::A,
        Symbol::B,
        Symbol::C,
        Symbol::D,
        Symbol::E,
        Symbol::F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::C => "c",
            Symbol::D => "d",
            Symbol::E => "e",
            Symbol::F => "f",
            Symbol::R12 => "r12",
            Symbol::R13 => "r13",
            Symbol::R23 => "r23",
            Symbol::Kappa => "kappa",
            Symbol::X => "X",
            Symbol::Y => "Y",
            Symbol::Z => "Z",
            Symbol::U => "u",
            Symbol::LocalY => "y",
            Symbol::LocalZ => "z",
            Symbol::LocalX => "x",
        }
    }

    /// Only `X`, `u` and `κ` may carry negative exponents.
    pub fn is_invertible(self) -> bool {
        matches!(self, Symbol::X | Symbol::U | Symbol::Kappa)
    }

    /// Phase-space coordinates (as opposed to parameters).
    pub fn is_coordinate(self) -> bool {
        matches!(
            self,
            Symbol::X
                | Symbol::Y
                | Symbol::Z
                | Symbol::U
                | Symbol::LocalX
                | Symbol::LocalY
                | Symbol::LocalZ
        )
    }

    fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "a" => Symbol::A,
            "b" => Symbol::B,
            "c" => Symbol::C,
            "d" => Symbol::D,
            "e" => Symbol::E,
            "f" => Symbol::F,
            "r12" => Symbol::R12,
            "r13" => Symbol::R13,
            "r23" => Symbol::R23,
            "kappa" | "κ" => Symbol::Kappa,
            "X" => Symbol::X,
            "Y" => Symbol::Y,
            "Z" => Symbol::Z,
            "u" => Symbol::U,
            "y" => Symbol::LocalY,
            "z" => Symbol::LocalZ,
            "x" => Symbol::LocalX,
            _ => return None,
        })
    }
}

/// A polynomial variable: a symbol plus a tensor-factor index.
///
/// `copy == 0` is the untensored variable; `X_1`, `X_2`, … are the copies of
/// `X` living in the first, second, … tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub symbol: Symbol,
    pub copy: u8,
}

impl Var {
    pub const fn new(symbol: Symbol) -> Self {
        Var { symbol, copy: 0 }
    }

    pub const fn copy_of(symbol: Symbol, copy: u8) -> Self {
        Var { symbol, copy }
    }

    pub fn with_copy(self, copy: u8) -> Self {
        Var { copy, ..self }
    }

    pub fn is_invertible(self) -> bool {
        self.symbol.is_invertible()
    }
}

impl From<Symbol> for Var {
    fn from(symbol: Symbol) -> Self {
        Var::new(symbol)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            f.write_str(self.symbol.name())
        } else {
            write!(f, "{}_{}", self.symbol.name(), self.copy)
        }
    }
}

impl FromStr for Var {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, copy) = match s.rsplit_once('_') {
            Some((name, idx)) => {
                let copy = idx
                    .parse::<u8>()
                    .map_err(|_| AlgebraError::Parse(format!("bad tensor index in {s:?}")))?;
                (name, copy)
            }
            None => (s, 0),
        };
        let symbol = Symbol::from_name(name)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {s:?}")))?;
        Ok(Var { symbol, copy })
    }
}
