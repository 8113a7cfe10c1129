use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use core::borrow::Borrow;
use core::fmt;

use crate::error::{Error, Result};

/// Surface spelling of the reduct's undefined constant. It never names an atom.
pub const UNDEFINED_CONSTANT: &str = "_u";

/// A propositional atom: `[a-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

pub type AtomSet = BTreeSet<Atom>;

impl Atom {
    pub fn new(name: &str) -> Result<Self> {
        if name == UNDEFINED_CONSTANT {
            return Err(Error::ReservedAtom(name.to_string()));
        }
        if is_atom_name(name) {
            Ok(Atom(name.to_string()))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Builds an atom set from names, failing on the first invalid one.
pub fn atom_set<'a, I>(names: I) -> Result<AtomSet>
where
    I: IntoIterator<Item = &'a str>,
{
    names.into_iter().map(Atom::new).collect()
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Writes `{a,b,c}` with the set's (lexicographic) order.
pub struct Braced<'a>(pub &'a AtomSet);

impl fmt::Display for Braced<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a.as_str())?;
        }
        f.write_str("}")
    }
}

pub fn braced(set: &AtomSet) -> String {
    Braced(set).to_string()
}
