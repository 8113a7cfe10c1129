/// Resource caps shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe / argument set enumerated exhaustively (3^n candidates).
    pub max_atoms: usize,
    /// Largest number of distinct statements built for a program.
    pub max_statements: usize,
    /// Largest number of transformation steps taken by a normalisation.
    pub max_steps: usize,
}

impl Limits {
    /// Bitmask width used by the enumerators; `max_atoms` above this is clamped.
    pub const HARD_MAX_ATOMS: usize = 64;

    pub fn with_max_atoms(self, max_atoms: usize) -> Self {
        Limits { max_atoms, ..self }
    }

    pub(crate) fn atom_cap(&self) -> usize {
        self.max_atoms.min(Self::HARD_MAX_ATOMS)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 16,
            max_statements: 100_000,
            max_steps: 1_000_000,
        }
    }
}
