use std::fmt;

use crate::algebra::Rational;

/// A formal parameter. Every polynomial or rational function is univariate
/// over exactly one of these; arithmetic across different symbols is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Lambda,
    Mu,
    X,
}

impl Symbol {
    /// Canonical lowercase name, used in JSON and plain-text output.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Lambda => "lambda",
            Symbol::Mu => "mu",
            Symbol::X => "x",
        }
    }

    /// LaTeX form of the symbol.
    pub fn latex(self) -> &'static str {
        match self {
            Symbol::Lambda => "\\lambda",
            Symbol::Mu => "\\mu",
            Symbol::X => "x",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        match name {
            "lambda" => Some(Symbol::Lambda),
            "mu" => Some(Symbol::Mu),
            "x" => Some(Symbol::X),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a formal parameter enters a computation: left symbolic, or bound to an
/// exact rational value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Symbolic,
    Bound(Rational),
}

impl Binding {
    pub fn bound(n: i64, d: i64) -> Binding {
        Binding::Bound(Rational::new(n, d))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Binding::Symbolic)
    }

    /// The bound value, if any.
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Binding::Symbolic => None,
            Binding::Bound(r) => Some(r),
        }
    }

    /// Short form for reports and command-line round-trips: `sym` or the
    /// rational literal.
    pub fn label(&self) -> String {
        match self {
            Binding::Symbolic => "sym".to_string(),
            Binding::Bound(r) => r.to_string(),
        }
    }
}

/// Deterministic sample points for certifying polynomial identities in a bound
/// parameter: the fixed prefix 2, 3/2, −1/3, 5, 7/4, extended with consecutive
/// primes, skipping duplicates and any excluded value.
pub fn sample_points(count: usize, exclude: &[Rational]) -> Vec<Rational> {
    let prefix = [
        Rational::from(2),
        Rational::new(3, 2),
        Rational::new(-1, 3),
        Rational::from(5),
        Rational::new(7, 4),
    ];
    let mut points: Vec<Rational> = Vec::with_capacity(count);
    let push = |candidate: Rational, points: &mut Vec<Rational>| {
        if points.len() < count && !exclude.contains(&candidate) && !points.contains(&candidate) {
            points.push(candidate);
        }
    };
    for p in prefix {
        push(p, &mut points);
    }
    let mut n: i64 = 2;
    while points.len() < count {
        if is_prime(n) {
            push(Rational::from(n), &mut points);
        }
        n += 1;
    }
    points
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
