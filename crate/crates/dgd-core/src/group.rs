//! Finite groups presented by Cayley tables.
//!
//! Elements are dense indices `0..n`; index 0 is always the identity (inputs
//! are re-indexed on load when necessary). Everything downstream (conjugacy
//! data, centralizers, commuting-pair orbits) is deterministic: class and
//! orbit representatives are minimal indices, sweeps run in index order.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

/// Group element index. Orders stay far below `u16::MAX`.
pub type Elt = u16;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("cayley table is empty")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("entry at ({row},{col}) is {value}, out of range 0..{order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("row {0} is not a permutation of 0..n")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation of 0..n")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails at triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unsupported group spec `{0}`")]
    BadSpec(String),
    #[error("symmetric(n) supports n <= 5, got {0}")]
    SymmetricTooLarge(usize),
    #[error("alternating(n) supports only n = 4, got {0}")]
    AlternatingUnsupported(usize),
    #[error("family parameter must be positive")]
    ZeroParameter,
    #[error("cannot read cayley file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cayley file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite group with multiplication by table lookup.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<Elt>,
    inv: Vec<Elt>,
}

/// Identity element index (guaranteed by construction).
pub const IDENTITY: Elt = 0;

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a as usize]
    }

    /// l a l^-1.
    #[inline]
    pub fn conj(&self, l: Elt, a: Elt) -> Elt {
        self.mul(self.mul(l, a), self.inv(l))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.n as Elt
    }

    pub fn commutes(&self, a: Elt, b: Elt) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: Elt) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// a^e for any signed exponent.
    pub fn pow(&self, a: Elt, e: i64) -> Elt {
        let ord = self.element_order(a) as i64;
        let mut k = e.rem_euclid(ord);
        let mut acc = IDENTITY;
        while k > 0 {
            acc = self.mul(acc, a);
            k -= 1;
        }
        acc
    }

    /// Validate a raw table and build the group, re-indexing so the identity
    /// becomes element 0 (preserving the relative order of the rest).
    pub fn from_cayley_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let report = validate_table(rows);
        if let Some(err) = report.first_error {
            return Err(err);
        }
        let n = rows.len();
        let e = report.identity.expect("validated table has an identity");
        // Re-index: identity to 0, remaining elements keep relative order.
        let new_of = |x: usize| -> usize {
            if x == e {
                0
            } else if x < e {
                x + 1
            } else {
                x
            }
        };
        let old_of = |i: usize| -> usize {
            if i == 0 {
                e
            } else if i <= e {
                i - 1
            } else {
                i
            }
        };
        let mut table = vec![0 as Elt; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = new_of(rows[old_of(i)][old_of(j)]) as Elt;
            }
        }
        let mut inv = vec![0 as Elt; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == IDENTITY)
                .expect("latin square rows guarantee a right inverse");
            inv[a] = b as Elt;
        }
        Ok(FiniteGroup { name: name.into(), n, table, inv })
    }

    /// Parse the text Cayley format: line 1 = n, then n rows of n indices.
    pub fn parse_cayley(name: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lno, first) = lines.next().ok_or(GroupError::Empty)?;
        let n: usize = first.trim().parse().map_err(|_| GroupError::Parse {
            line: lno + 1,
            message: format!("expected group order, got `{}`", first.trim()),
        })?;
        if n == 0 {
            return Err(GroupError::Parse { line: lno + 1, message: "order must be positive".into() });
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (lno, line) = lines.next().ok_or(GroupError::Parse {
                line: 0,
                message: format!("expected {} table rows, file ended early", n),
            })?;
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| GroupError::Parse {
                line: lno + 1,
                message: "row contains a non-integer token".into(),
            })?;
            rows.push(row);
        }
        Self::from_cayley_table(name, &rows)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, GroupError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse_cayley(format!("file:{}", path.display()), &text)
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroParameter);
        }
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_cayley_table(format!("cyclic:{}", n), &rows)
    }

    /// Dihedral group of order 2n: indices 0..n are rotations r^i, indices
    /// n..2n are reflections r^i s, with s r = r^-1 s.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroParameter);
        }
        let idx = |rot: usize, refl: bool| -> usize { if refl { n + rot } else { rot } };
        let mut rows = vec![vec![0usize; 2 * n]; 2 * n];
        for i in 0..n {
            for k in 0..n {
                rows[idx(i, false)][idx(k, false)] = idx((i + k) % n, false);
                rows[idx(i, false)][idx(k, true)] = idx((i + k) % n, true);
                rows[idx(i, true)][idx(k, false)] = idx((i + n - k) % n, true);
                rows[idx(i, true)][idx(k, true)] = idx((i + n - k) % n, false);
            }
        }
        Self::from_cayley_table(format!("dihedral:{}", n), &rows)
    }

    /// Symmetric group on n letters (n <= 5), permutations in lexicographic
    /// order so the identity permutation is element 0.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroParameter);
        }
        if n > 5 {
            return Err(GroupError::SymmetricTooLarge(n));
        }
        let perms = all_permutations(n);
        Self::from_permutations(format!("sym:{}", n), &perms)
    }

    /// Alternating group on 4 letters (even permutations of S4).
    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        if n != 4 {
            return Err(GroupError::AlternatingUnsupported(n));
        }
        let perms: Vec<Vec<u8>> =
            all_permutations(4).into_iter().filter(|p| permutation_is_even(p)).collect();
        Self::from_permutations("alt:4".to_string(), &perms)
    }

    fn from_permutations(name: String, perms: &[Vec<u8>]) -> Result<Self, GroupError> {
        let index: BTreeMap<&[u8], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let m = perms.len();
        let mut rows = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                // (p_i compose p_j)(x) = p_i[p_j[x]]
                let prod: Vec<u8> = perms[j].iter().map(|&x| perms[i][x as usize]).collect();
                rows[i][j] = index[prod.as_slice()];
            }
        }
        Self::from_cayley_table(name, &rows)
    }

    /// Quaternion group {±1, ±i, ±j, ±k}, ordered (+1,−1,+i,−i,+j,−j,+k,−k).
    pub fn quaternion8() -> Self {
        // Axis products among (1,i,j,k) with result sign.
        // axmul[a][b] = (sign_flip, axis) for unit_a * unit_b.
        const AXMUL: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let idx = |sign: bool, axis: usize| -> usize { 2 * axis + sign as usize };
        let mut rows = vec![vec![0usize; 8]; 8];
        for a in 0..4 {
            for sa in [false, true] {
                for b in 0..4 {
                    for sb in [false, true] {
                        let (flip, axis) = AXMUL[a][b];
                        rows[idx(sa, a)][idx(sb, b)] = idx(sa ^ sb ^ flip, axis);
                    }
                }
            }
        }
        Self::from_cayley_table("q8", &rows).expect("quaternion table is a group")
    }

    /// Direct product; element (a,b) gets index a*|H| + b.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (ng, nh) = (g.n, h.n);
        let n = ng * nh;
        let mut rows = vec![vec![0usize; n]; n];
        for a1 in 0..ng {
            for b1 in 0..nh {
                for a2 in 0..ng {
                    for b2 in 0..nh {
                        let p = g.mul(a1 as Elt, a2 as Elt) as usize;
                        let q = h.mul(b1 as Elt, b2 as Elt) as usize;
                        rows[a1 * nh + b1][a2 * nh + b2] = p * nh + q;
                    }
                }
            }
        }
        Self::from_cayley_table(format!("prod({},{})", g.name, h.name), &rows)
            .expect("product of groups is a group")
    }

    /// Parse a group spec: `cyclic:n`, `dihedral:n`, `sym:n`, `alt:4`, `q8`,
    /// `prod(spec,spec)`, `file:path`, plus short aliases `Cn`, `Dn`, `Sn`,
    /// `An` (case-insensitive).
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        let s = spec.trim();
        if let Some(rest) = s.strip_prefix("file:") {
            return Self::from_file(rest.trim());
        }
        let low = s.to_ascii_lowercase();
        if low == "q8" {
            return Ok(Self::quaternion8());
        }
        if let Some(inner) = low.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // Split at the top-level comma (specs may nest).
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| GroupError::BadSpec(spec.to_string()))?;
            let left = Self::from_spec(&inner[..i])?;
            let right = Self::from_spec(&inner[i + 1..])?;
            return Ok(Self::direct_product(&left, &right));
        }
        if let Some((fam, arg)) = low.split_once(':') {
            let k: usize = arg.trim().parse().map_err(|_| GroupError::BadSpec(spec.to_string()))?;
            return match fam.trim() {
                "cyclic" => Self::cyclic(k),
                "dihedral" => Self::dihedral(k),
                "sym" => Self::symmetric(k),
                "alt" => Self::alternating(k),
                _ => Err(GroupError::BadSpec(spec.to_string())),
            };
        }
        if let Some(k) = alias_number(&low, 'c') {
            return Self::cyclic(k);
        }
        if let Some(k) = alias_number(&low, 'd') {
            return Self::dihedral(k);
        }
        if let Some(k) = alias_number(&low, 's') {
            return Self::symmetric(k);
        }
        if let Some(k) = alias_number(&low, 'a') {
            return Self::alternating(k);
        }
        Err(GroupError::BadSpec(spec.to_string()))
    }

    /// Conjugacy classes, minimal-index representatives, centralizers.
    pub fn conjugacy(&self) -> ConjugacyData {
        let n = self.n;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Elt>> = Vec::new();
        for g in 0..n as Elt {
            if class_of[g as usize] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members: Vec<Elt> = self.elements().map(|l| self.conj(l, g)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m as usize] = idx;
            }
            classes.push(members);
        }
        let reps: Vec<Elt> = classes.iter().map(|c| c[0]).collect();
        let centralizers: Vec<EmbeddedSubgroup> =
            reps.iter().map(|&r| self.centralizer_subgroup(r)).collect();
        let centralizer_orders = centralizers.iter().map(|c| c.group.order()).collect();
        ConjugacyData { classes, class_of, reps, centralizers, centralizer_orders }
    }

    /// The centralizer C_G(g) as an embedded, re-indexed group.
    pub fn centralizer_subgroup(&self, g: Elt) -> EmbeddedSubgroup {
        let elements: Vec<Elt> = self.elements().filter(|&x| self.commutes(x, g)).collect();
        EmbeddedSubgroup::new(self, format!("centralizer({},g{})", self.name, g), elements)
    }

    /// All commuting pairs and their simultaneous-conjugation orbits.
    pub fn commuting_pair_orbits(&self) -> CommutingPairOrbits {
        let mut pairs = Vec::new();
        for h in self.elements() {
            for g in self.elements() {
                if self.commutes(h, g) {
                    pairs.push((h, g));
                }
            }
        }
        let mut orbit_of_pair: BTreeMap<(Elt, Elt), usize> = BTreeMap::new();
        let mut orbits: Vec<Vec<(Elt, Elt)>> = Vec::new();
        for &(h, g) in &pairs {
            if orbit_of_pair.contains_key(&(h, g)) {
                continue;
            }
            let idx = orbits.len();
            let mut members: Vec<(Elt, Elt)> =
                self.elements().map(|l| (self.conj(l, h), self.conj(l, g))).collect();
            members.sort_unstable();
            members.dedup();
            for &p in &members {
                orbit_of_pair.insert(p, idx);
            }
            orbits.push(members);
        }
        let reps = orbits.iter().map(|o| o[0]).collect();
        CommutingPairOrbits { pairs, orbits, orbit_of_pair, reps }
    }
}

fn alias_number(low: &str, letter: char) -> Option<usize> {
    low.strip_prefix(letter).and_then(|r| r.parse().ok())
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    use itertools::Itertools;
    (0..n as u8).permutations(n).collect()
}

fn permutation_is_even(p: &[u8]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Conjugacy structure of a group.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    /// Classes in order of their minimal element; each sorted ascending.
    pub classes: Vec<Vec<Elt>>,
    /// Element -> class index.
    pub class_of: Vec<usize>,
    /// Minimal-index representative per class (reps[0] = identity).
    pub reps: Vec<Elt>,
    /// Centralizer of each representative as an embedded group.
    pub centralizers: Vec<EmbeddedSubgroup>,
    pub centralizer_orders: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A subgroup materialized as its own `FiniteGroup` plus the embedding.
#[derive(Clone, Debug)]
pub struct EmbeddedSubgroup {
    /// Re-indexed group structure (local identity is 0).
    pub group: FiniteGroup,
    /// `elements[local]` = ambient index; sorted ascending, so local 0 is the
    /// ambient identity whenever the subgroup contains it (always here).
    pub elements: Vec<Elt>,
}

impl EmbeddedSubgroup {
    fn new(parent: &FiniteGroup, name: String, elements: Vec<Elt>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let local: BTreeMap<Elt, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = elements.len();
        let mut rows = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let p = parent.mul(elements[i], elements[j]);
                rows[i][j] = *local.get(&p).expect("centralizers are closed under products");
            }
        }
        let group = FiniteGroup::from_cayley_table(name, &rows).expect("subgroup table is a group");
        EmbeddedSubgroup { group, elements }
    }

    /// Local index of an ambient element, if it lies in the subgroup.
    pub fn local_of(&self, ambient: Elt) -> Option<usize> {
        self.elements.binary_search(&ambient).ok()
    }
}

/// Orbits of commuting pairs under simultaneous conjugation.
#[derive(Clone, Debug)]
pub struct CommutingPairOrbits {
    /// All (h,g) with hg = gh, lexicographically ordered.
    pub pairs: Vec<(Elt, Elt)>,
    /// Orbits in order of their lexicographically minimal pair; each sorted.
    pub orbits: Vec<Vec<(Elt, Elt)>>,
    pub orbit_of_pair: BTreeMap<(Elt, Elt), usize>,
    /// Minimal pair per orbit.
    pub reps: Vec<(Elt, Elt)>,
}

impl CommutingPairOrbits {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Validation report for a raw Cayley table: all violated axioms with one
/// witness each. `first_error` repeats the first violation as a typed error.
#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub identity: Option<usize>,
    pub first_error: Option<GroupError>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, err: GroupError) {
        self.violations.push(err.to_string());
        if self.first_error.is_none() {
            self.first_error = Some(err);
        }
    }
}

/// Check every group axiom on a raw table, collecting one witness per
/// violated axiom class rather than stopping at the first.
pub fn validate_table(rows: &[Vec<usize>]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = rows.len();
    if n == 0 {
        report.push(GroupError::Empty);
        return report;
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            report.push(GroupError::RaggedRow { row: i, got: row.len(), expected: n });
            return report;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if rows[i][j] >= n {
                report.push(GroupError::OutOfRange { row: i, col: j, value: rows[i][j], order: n });
                return report;
            }
        }
    }
    'rows: for (i, row) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if seen[v] {
                report.push(GroupError::RowNotPermutation(i));
                break 'rows;
            }
            seen[v] = true;
        }
    }
    'cols: for j in 0..n {
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[rows[i][j]] {
                report.push(GroupError::ColumnNotPermutation(j));
                break 'cols;
            }
            seen[rows[i][j]] = true;
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|j| rows[e][j] == j && rows[j][e] == j));
    report.identity = identity;
    if identity.is_none() {
        report.push(GroupError::NoIdentity);
    }
    'assoc: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                    report.push(GroupError::NotAssociative(i, j, k));
                    break 'assoc;
                }
            }
        }
    }
    report
}
