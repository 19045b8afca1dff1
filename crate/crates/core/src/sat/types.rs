use std::fmt;
use std::ops::Not;

/// A solver variable. Internally 0-based; atom `i` of a universe is `Var(i - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) u32);

impl Var {
    pub fn from_atom(atom: u32) -> Self {
        assert!(atom > 0, "atom indices start at 1");
        Var(atom - 1)
    }

    #[inline]
    pub fn atom(self) -> u32 {
        self.0 + 1
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn lit(self, positive: bool) -> Lit {
        Lit(self.0 << 1 | u32::from(!positive))
    }

    #[inline]
    pub fn pos(self) -> Lit {
        self.lit(true)
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        self.lit(false)
    }
}

/// A literal, encoded as `2 * var + sign` with sign 1 for negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn from_dimacs(lit: i32) -> Self {
        assert!(lit != 0, "0 is not a literal");
        Var::from_atom(lit.unsigned_abs()).lit(lit > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let a = self.var().atom() as i32;
        if self.is_positive() {
            a
        } else {
            -a
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}
