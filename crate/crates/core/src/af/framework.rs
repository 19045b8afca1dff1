use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AfError;

/// A finite argumentation framework: arguments and an attack relation.
///
/// Arguments are addressed by their declaration index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: IndexSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

/// Argument names start with a letter or digit, followed by letters, digits
/// or underscores.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphanumeric())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ArgumentationFramework {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_argument(&mut self, name: impl Into<String>) -> Result<usize, AfError> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(AfError::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(AfError::DuplicateArgument { line: None, name });
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        self.attackers.push(Vec::new());
        self.targets.push(Vec::new());
        Ok(i)
    }

    /// Adds `attacker -> target`. Returns false if the attack already existed.
    pub fn add_attack(&mut self, attacker: usize, target: usize) -> bool {
        assert!(attacker < self.len() && target < self.len(), "attack endpoint out of range");
        if !self.attacks.insert((attacker, target)) {
            return false;
        }
        self.attackers[target].push(attacker);
        self.targets[attacker].push(target);
        true
    }

    pub fn add_attack_by_name(&mut self, attacker: &str, target: &str) -> Result<bool, AfError> {
        let a = self.require(attacker)?;
        let b = self.require(target)?;
        Ok(self.add_attack(a, b))
    }

    fn require(&self, name: &str) -> Result<usize, AfError> {
        self.index_of(name).ok_or_else(|| AfError::UndeclaredArgument {
            line: None,
            name: name.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn num_attacks(&self) -> usize {
        self.attacks.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Attacks in insertion order.
    pub fn attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn attacks_pair(&self, a: usize, b: usize) -> bool {
        self.attacks.contains(&(a, b))
    }

    /// `a⁻`: arguments attacking `a`.
    pub fn attackers_of(&self, a: usize) -> &[usize] {
        &self.attackers[a]
    }

    /// `a⁺`: arguments attacked by `a`.
    pub fn attacked_by(&self, a: usize) -> &[usize] {
        &self.targets[a]
    }

    pub fn is_conflict_free(&self, set: &[bool]) -> bool {
        self.attacks.iter().all(|&(a, b)| !(set[a] && set[b]))
    }

    /// Every attacker of `a` is attacked by some member of `set`.
    pub fn is_acceptable(&self, a: usize, set: &[bool]) -> bool {
        self.attackers[a]
            .iter()
            .all(|&b| self.attackers[b].iter().any(|&c| set[c]))
    }

    pub fn is_admissible(&self, set: &[bool]) -> bool {
        self.is_conflict_free(set) && (0..self.len()).filter(|&a| set[a]).all(|a| self.is_acceptable(a, set))
    }

    /// The characteristic function: arguments acceptable with respect to `set`.
    pub fn characteristic(&self, set: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|a| self.is_acceptable(a, set)).collect()
    }

    pub fn membership(&self, members: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut v = vec![false; self.len()];
        for m in members {
            v[m] = true;
        }
        v
    }

    pub fn extension(&self, set: &[bool]) -> Extension {
        Extension::new((0..self.len()).filter(|&a| set[a]).map(|a| self.names[a].clone()))
    }

    /// Membership vector of an extension. Fails on unknown names.
    pub fn members_of(&self, ext: &Extension) -> Result<Vec<bool>, AfError> {
        let mut v = vec![false; self.len()];
        for n in &ext.members {
            v[self.require(n)?] = true;
        }
        Ok(v)
    }

    /// Random framework over `n` arguments `a0..`, each ordered pair
    /// (self-attacks included) attacking with probability `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut af = Self::with_arguments(n);
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(p) {
                    af.add_attack(a, b);
                }
            }
        }
        af
    }

    /// Random framework over `n` arguments with exactly `m` distinct
    /// attacks between distinct arguments.
    pub fn random_with_attacks(n: usize, m: usize, seed: u64) -> Self {
        assert!(n >= 2 || m == 0);
        assert!(m <= n * n.saturating_sub(1), "too many attacks requested");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut af = Self::with_arguments(n);
        while af.num_attacks() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                af.add_attack(a, b);
            }
        }
        af
    }

    fn with_arguments(n: usize) -> Self {
        let mut af = Self::new();
        for i in 0..n {
            af.add_argument(format!("a{i}")).expect("generated names are unique");
        }
        af
    }
}

/// A set of arguments, kept sorted by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension {
    pub members: BTreeSet<String>,
}

impl Extension {
    pub fn new<I, S>(members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// ICCMA bracket list: `[a,c]`.
impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// ICCMA list of extensions: `[[a,c],[b]]`, or `[]` when empty.
pub fn format_extensions(exts: &[Extension]) -> String {
    let inner: Vec<String> = exts.iter().map(Extension::to_string).collect();
    format!("[{}]", inner.join(","))
}
