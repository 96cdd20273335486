use std::fmt;

use crate::ExprError;

/// What a variable stands for. Only coordinates participate in the
/// jet chain rule; free parameters are constants under differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Coordinate,
    Jet,
    GroupParameter,
    FreeParameter,
}

/// A variable, packed into a single word.
///
/// The numeric value of the packing is the declared variable order used by
/// the monomial ordering: `x0 < x1 < .. < y0 < .. < t < t_x0 < .. < t_x0x0 <
/// .. < s0 < .. < delta < free parameters`, the latter ordered by name.
/// Free parameter names are limited to nine characters from `[A-Za-z0-9_]`
/// so the packing can carry them without any shared table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u64);

const CLASS_SHIFT: u32 = 56;
const CLASS_X: u64 = 0;
const CLASS_Y: u64 = 1;
const CLASS_T: u64 = 2;
const CLASS_T1: u64 = 3;
const CLASS_T2: u64 = 4;
const CLASS_S: u64 = 5;
const CLASS_DELTA: u64 = 6;
const CLASS_FREE: u64 = 7;

const MAX_FREE_LEN: usize = 9;
/// Highest coordinate index a jet variable may refer to.
pub const MAX_JET_INDEX: u8 = 7;

fn char_code(c: char) -> Option<u64> {
    match c {
        '0'..='9' => Some(1 + (c as u64 - '0' as u64)),
        'A'..='Z' => Some(11 + (c as u64 - 'A' as u64)),
        '_' => Some(37),
        'a'..='z' => Some(38 + (c as u64 - 'a' as u64)),
        _ => None,
    }
}

fn code_char(code: u64) -> char {
    match code {
        1..=10 => (b'0' + (code - 1) as u8) as char,
        11..=36 => (b'A' + (code - 11) as u8) as char,
        37 => '_',
        _ => (b'a' + (code - 38) as u8) as char,
    }
}

impl Symbol {
    fn new(class: u64, payload: u64) -> Self {
        Symbol((class << CLASS_SHIFT) | payload)
    }

    /// Raw encoding, stable within a process.
    pub(crate) fn code(self) -> u64 {
        self.0
    }

    fn class(self) -> u64 {
        self.0 >> CLASS_SHIFT
    }

    fn payload(self) -> u64 {
        self.0 & ((1u64 << CLASS_SHIFT) - 1)
    }

    /// Coordinate `x{i}`.
    pub fn x(i: u32) -> Self {
        Self::new(CLASS_X, i as u64)
    }

    /// Coordinate `y{i}`.
    pub fn y(i: u32) -> Self {
        Self::new(CLASS_Y, i as u64)
    }

    /// The marking function `t` as a zeroth-order jet.
    pub fn t() -> Self {
        Self::new(CLASS_T, 0)
    }

    /// First-order jet `t_x{i}`.
    pub fn t1(i: u8) -> Self {
        assert!(i <= MAX_JET_INDEX, "jet index out of range");
        Self::new(CLASS_T1, i as u64)
    }

    /// Second-order jet `t_x{i}x{j}`; symmetric in its indices.
    pub fn t2(i: u8, j: u8) -> Self {
        assert!(i <= MAX_JET_INDEX && j <= MAX_JET_INDEX, "jet index out of range");
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Self::new(CLASS_T2, (a as u64) * 8 + b as u64)
    }

    /// Group parameter `s{i}`.
    pub fn s(i: u32) -> Self {
        Self::new(CLASS_S, i as u64)
    }

    /// Group parameter `delta`.
    pub fn delta() -> Self {
        Self::new(CLASS_DELTA, 0)
    }

    /// Free parameter with the given name.
    pub fn param(name: &str) -> Result<Self, ExprError> {
        let bad = || ExprError::BadIdentifier(name.to_string());
        if name.is_empty() || name.len() > MAX_FREE_LEN {
            return Err(bad());
        }
        let first = name.chars().next().unwrap();
        if first.is_ascii_digit() {
            return Err(bad());
        }
        let mut payload = 0u64;
        for (k, c) in name.chars().enumerate() {
            let code = char_code(c).ok_or_else(bad)?;
            payload |= code << (6 * (MAX_FREE_LEN - 1 - k));
        }
        Ok(Self::new(CLASS_FREE, payload))
    }

    /// Resolves an identifier the way the parser does: `x3`, `y5`, `t`,
    /// `t_x2`, `t_x1x3`, `s4`, `delta` are structured; anything else is a
    /// free parameter.
    pub fn from_name(name: &str) -> Result<Self, ExprError> {
        if let Some(s) = structured(name) {
            return Ok(s);
        }
        Self::param(name)
    }

    pub fn kind(self) -> VarKind {
        match self.class() {
            CLASS_X | CLASS_Y => VarKind::Coordinate,
            CLASS_T | CLASS_T1 | CLASS_T2 => VarKind::Jet,
            CLASS_S | CLASS_DELTA => VarKind::GroupParameter,
            _ => VarKind::FreeParameter,
        }
    }

    /// Index of an `x` coordinate.
    pub fn x_index(self) -> Option<u8> {
        (self.class() == CLASS_X).then(|| self.payload() as u8)
    }

    /// Order of a jet variable (0 for `t`).
    pub fn jet_order(self) -> Option<u8> {
        match self.class() {
            CLASS_T => Some(0),
            CLASS_T1 => Some(1),
            CLASS_T2 => Some(2),
            _ => None,
        }
    }

    /// Total derivative of a jet variable by the coordinate `x{i}`.
    pub fn jet_derivative(self, i: u8) -> Result<Symbol, ExprError> {
        if i > MAX_JET_INDEX {
            return Err(ExprError::JetOrderExceeded(format!("{self}/x{i}")));
        }
        match self.class() {
            CLASS_T => Ok(Symbol::t1(i)),
            CLASS_T1 => Ok(Symbol::t2(self.payload() as u8, i)),
            CLASS_T2 => Err(ExprError::JetOrderExceeded(self.to_string())),
            _ => Err(ExprError::JetOrderExceeded(self.to_string())),
        }
    }

    pub fn name(self) -> String {
        let p = self.payload();
        match self.class() {
            CLASS_X => format!("x{p}"),
            CLASS_Y => format!("y{p}"),
            CLASS_T => "t".to_string(),
            CLASS_T1 => format!("t_x{p}"),
            CLASS_T2 => format!("t_x{}x{}", p / 8, p % 8),
            CLASS_S => format!("s{p}"),
            CLASS_DELTA => "delta".to_string(),
            _ => {
                let mut out = String::new();
                for k in 0..MAX_FREE_LEN {
                    let code = (p >> (6 * (MAX_FREE_LEN - 1 - k))) & 63;
                    if code == 0 {
                        break;
                    }
                    out.push(code_char(code));
                }
                out
            }
        }
    }
}

fn parse_index(s: &str) -> Option<u32> {
    if s.is_empty() || s.len() > 3 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

fn structured(name: &str) -> Option<Symbol> {
    if name == "t" {
        return Some(Symbol::t());
    }
    if name == "delta" {
        return Some(Symbol::delta());
    }
    if let Some(rest) = name.strip_prefix("t_x") {
        if let Some(pos) = rest.find('x') {
            let i = parse_index(&rest[..pos])?;
            let j = parse_index(&rest[pos + 1..])?;
            if i > MAX_JET_INDEX as u32 || j > MAX_JET_INDEX as u32 {
                return None;
            }
            return Some(Symbol::t2(i as u8, j as u8));
        }
        let i = parse_index(rest)?;
        return (i <= MAX_JET_INDEX as u32).then(|| Symbol::t1(i as u8));
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let idx = parse_index(tail)?;
    match head {
        "x" => Some(Symbol::x(idx)),
        "y" => Some(Symbol::y(idx)),
        "s" => Some(Symbol::s(idx)),
        _ => None,
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ["x0", "x4", "y5", "t", "t_x3", "t_x1x4", "s7", "delta", "s", "eps", "alpha_2", "Zeta"] {
            let s = Symbol::from_name(name).unwrap();
            assert_eq!(s.name(), name);
        }
    }

    #[test]
    fn second_jets_are_symmetric() {
        assert_eq!(Symbol::t2(3, 1), Symbol::t2(1, 3));
        assert_eq!(Symbol::from_name("t_x3x1").unwrap(), Symbol::t2(1, 3));
    }

    #[test]
    fn declared_order() {
        let order = ["x0", "x1", "x4", "y0", "t", "t_x0", "t_x4", "t_x0x0", "s0", "s8", "delta", "a", "b", "eps"];
        let syms: Vec<_> = order.iter().map(|n| Symbol::from_name(n).unwrap()).collect();
        assert!(syms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kinds() {
        assert_eq!(Symbol::x(2).kind(), VarKind::Coordinate);
        assert_eq!(Symbol::t1(0).kind(), VarKind::Jet);
        assert_eq!(Symbol::delta().kind(), VarKind::GroupParameter);
        assert_eq!(Symbol::param("c").unwrap().kind(), VarKind::FreeParameter);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Symbol::param("toolongname").is_err());
        assert!(Symbol::param("a-b").is_err());
        assert!(Symbol::param("1a").is_err());
    }

    #[test]
    fn jet_derivatives() {
        assert_eq!(Symbol::t().jet_derivative(2).unwrap(), Symbol::t1(2));
        assert_eq!(Symbol::t1(4).jet_derivative(1).unwrap(), Symbol::t2(1, 4));
        assert!(Symbol::t2(0, 0).jet_derivative(1).is_err());
    }
}
