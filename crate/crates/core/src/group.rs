//! Finite groups given by Cayley tables, and their subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Deserialize;

use crate::error::GroupError;

/// Default guard on generated group orders.
pub const DEFAULT_ORDER_LIMIT: usize = 512;

/// Environment variable overriding [`DEFAULT_ORDER_LIMIT`] for the CLI.
pub const ORDER_LIMIT_ENV: &str = "TAME_APPROX_MAX_ORDER";

#[derive(Debug)]
struct GroupData {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

/// A finite group, stored as its full multiplication table.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.identity == other.0.identity && self.0.table == other.0.table)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("exponent", &self.exponent())
            .finish()
    }
}

impl Group {
    /// Closure of the given permutations under composition.
    ///
    /// Elements are numbered breadth-first from the identity, multiplying on
    /// the right by the generators in input order. `(a*b)(i) = a(b(i))`.
    pub fn from_permutations(gens: &[Vec<usize>], limit: usize) -> Result<Group, GroupError> {
        let degree = gens.first().map_or(0, Vec::len);
        for (index, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(GroupError::MixedDegrees(degree, g.len()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(GroupError::BadPermutation { index, degree });
                }
                seen[x] = true;
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y: Vec<usize> = g.iter().map(|&i| elements[x][i]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= limit {
                        return Err(GroupError::TooLarge { limit });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let ab: Vec<usize> = elements[b].iter().map(|&i| elements[a][i]).collect();
                table[a * n + b] = index[&ab];
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(Group::assemble(n, table, 0, Some(names)))
    }

    /// Validates a Cayley table: square, Latin, with identity, associative.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::RaggedTable {
                    row,
                    len: r.len(),
                    order: n,
                });
            }
            if !is_permutation(r.iter().copied(), n) {
                return Err(GroupError::RowNotPermutation { row, order: n });
            }
        }
        for col in 0..n {
            if !is_permutation(table.iter().map(|r| r[col]), n) {
                return Err(GroupError::ColumnNotPermutation { col, order: n });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(GroupError::Names {
                    order: n,
                    len: ns.len(),
                });
            }
        }
        let flat = table.into_iter().flatten().collect();
        Ok(Group::assemble(n, flat, identity, names))
    }

    /// Parses the group input format: `{"permutations": [...]}` or
    /// `{"table": [...], "names": [...]}`.
    pub fn from_json(text: &str, limit: usize) -> Result<Group, GroupError> {
        #[derive(Deserialize)]
        #[serde(untagged, deny_unknown_fields)]
        enum Input {
            Permutations {
                permutations: Vec<Vec<usize>>,
            },
            Table {
                table: Vec<Vec<usize>>,
                #[serde(default)]
                names: Option<Vec<String>>,
            },
        }
        let input: Input =
            serde_json::from_str(text).map_err(|e| GroupError::Input(e.to_string()))?;
        match input {
            Input::Permutations { permutations } => Group::from_permutations(&permutations, limit),
            Input::Table { table, names } => {
                if table.len() > limit {
                    return Err(GroupError::TooLarge { limit });
                }
                Group::from_table(table, names)
            }
        }
    }

    /// `Z/o1 × Z/o2 × ...`; element index is mixed radix with the first factor fastest.
    pub fn direct_product_cyclic(orders: &[usize]) -> Group {
        let orders: Vec<usize> = orders.iter().copied().filter(|&o| o > 1).collect();
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&o| {
                    let d = x % o;
                    x /= o;
                    d
                })
                .collect()
        };
        let compose = |a: &[usize], b: &[usize]| -> usize {
            let mut idx = 0;
            let mut stride = 1;
            for ((&x, &y), &o) in a.iter().zip(b).zip(&orders) {
                idx += ((x + y) % o) * stride;
                stride *= o;
            }
            idx
        };
        let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = compose(&all[a], &all[b]);
            }
        }
        let names = all
            .iter()
            .map(|d| {
                let parts: Vec<String> = d.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Group::assemble(n, table, 0, Some(names))
    }

    pub fn cyclic(n: usize) -> Group {
        Group::direct_product_cyclic(&[n])
    }

    /// `Z/ℓⁿ × Z/ℓ`, the Galois group of `k(p^{1/ℓⁿ}, q^{1/ℓ})/k` in the counterexamples.
    pub fn ell_group(ell: usize, n: u32) -> Group {
        Group::direct_product_cyclic(&[ell.pow(n), ell])
    }

    pub fn symmetric3() -> Group {
        Group::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_ORDER_LIMIT)
            .expect("S3 generators are valid")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; index `2u + s` with `u ∈ {1,i,j,k}`, `s` the sign bit.
    pub fn quaternion() -> Group {
        // unit products: (sign, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (ua, sa) = (a / 2, a % 2);
                        let (ub, sb) = (b / 2, b % 2);
                        let (s, u) = UNIT[ua][ub];
                        2 * u + ((sa + sb + s) % 2)
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Group::from_table(table, Some(names)).expect("quaternion table is a group")
    }

    /// Named groups: `klein4`, `z2`, `z3`, `z4`, `z6`, `z2xz4`, `z2xz2xz2`,
    /// `z3xz3`, `s3`, `q8`, `cyclic:N`, `product:a,b,...`, `lgroup:ell,n`.
    pub fn builtin(name: &str) -> Result<Group, GroupError> {
        let name = name.strip_prefix("builtin:").unwrap_or(name);
        let unknown = || GroupError::UnknownBuiltin(name.to_string());
        let parse_list = |s: &str| -> Result<Vec<usize>, GroupError> {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| unknown()))
                .collect()
        };
        let g = match name {
            "klein4" | "z2xz2" => Group::direct_product_cyclic(&[2, 2]),
            "z2" => Group::cyclic(2),
            "z3" => Group::cyclic(3),
            "z4" => Group::cyclic(4),
            "z6" => Group::cyclic(6),
            "z2xz4" => Group::direct_product_cyclic(&[2, 4]),
            "z2xz2xz2" => Group::direct_product_cyclic(&[2, 2, 2]),
            "z3xz3" => Group::direct_product_cyclic(&[3, 3]),
            "s3" => Group::symmetric3(),
            "q8" => Group::quaternion(),
            _ => {
                if let Some(rest) = name.strip_prefix("cyclic:") {
                    let v = parse_list(rest)?;
                    match v.as_slice() {
                        [n] if *n >= 1 => Group::cyclic(*n),
                        _ => return Err(unknown()),
                    }
                } else if let Some(rest) = name.strip_prefix("product:") {
                    let v = parse_list(rest)?;
                    if v.contains(&0) {
                        return Err(unknown());
                    }
                    Group::direct_product_cyclic(&v)
                } else if let Some(rest) = name.strip_prefix("lgroup:") {
                    let v = parse_list(rest)?;
                    match v.as_slice() {
                        [ell, n] if *ell >= 2 && *n >= 1 => Group::ell_group(*ell, *n as u32),
                        _ => return Err(unknown()),
                    }
                } else {
                    return Err(unknown());
                }
            }
        };
        Ok(g)
    }

    fn assemble(
        order: usize,
        table: Vec<usize>,
        identity: usize,
        names: Option<Vec<String>>,
    ) -> Group {
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("every element of a finite group has an inverse")
            })
            .collect();
        Group(Arc::new(GroupData {
            order,
            table,
            identity,
            inverses,
            names,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.0.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    pub fn name(&self, a: usize) -> String {
        match &self.0.names {
            Some(ns) => ns[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn table_row(&self, a: usize) -> &[usize] {
        let n = self.0.order;
        &self.0.table[a * n..(a + 1) * n]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .fold(1usize, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set: elements in index order, kept when they enlarge
    /// the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated(&[]);
        for a in self.elements() {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&a| seen[a]).collect()
    }

    fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        self.closure(gens)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: vec![self.identity()],
        }
    }

    /// Closure of `gens ∪ {identity}`.
    pub fn generate(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&index) = gens.iter().find(|&&g| g >= self.order()) {
            return Err(GroupError::ElementIndex {
                index,
                order: self.order(),
            });
        }
        Ok(Subgroup {
            parent: self.clone(),
            elements: self.closure(gens),
        })
    }

    /// The distinct cyclic subgroups `<g>`, sorted by order and then by element set.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let sets: BTreeSet<(usize, Vec<usize>)> = self
            .elements()
            .map(|g| {
                let e = self.closure(&[g]);
                (e.len(), e)
            })
            .collect();
        sets.into_iter()
            .map(|(_, elements)| Subgroup {
                parent: self.clone(),
                elements,
            })
            .collect()
    }

    /// Every subgroup, as joins of cyclic subgroups; sorted like [`Group::cyclic_subgroups`].
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let mut found: BTreeSet<(usize, Vec<usize>)> = cyclic
            .iter()
            .map(|h| (h.order(), h.elements.clone()))
            .collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().map(|(_, e)| e.clone()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.elements.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.extend(&c.elements);
                    let joined = self.closure(&gens);
                    if found.insert((joined.len(), joined.clone())) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        found
            .into_iter()
            .map(|(_, elements)| Subgroup {
                parent: self.clone(),
                elements,
            })
            .collect()
    }
}

/// A subgroup, as a sorted set of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Group,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps an explicit element set, checking closure and the identity.
    pub fn from_elements(parent: &Group, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&index) = elements.iter().find(|&&g| g >= parent.order()) {
            return Err(GroupError::ElementIndex {
                index,
                order: parent.order(),
            });
        }
        let closed = parent.closure(&elements);
        if closed != elements {
            return Err(GroupError::Input(format!(
                "elements {elements:?} are not closed under the group law"
            )));
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
        })
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements
            .iter()
            .any(|&g| self.parent.element_order(g) == self.order())
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// The subgroup as a standalone group; index `i` stands for `elements()[i]`.
    pub fn to_group(&self) -> Group {
        let pos: HashMap<usize, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let k = self.order();
        let mut table = vec![0usize; k * k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * k + j] = pos[&self.parent.mul(a, b)];
            }
        }
        let names = self
            .parent
            .0
            .names
            .as_ref()
            .map(|ns| self.elements.iter().map(|&g| ns[g].clone()).collect());
        Group::assemble(k, table, pos[&self.parent.identity()], names)
    }

    /// Element names, for reports.
    pub fn names(&self) -> Vec<String> {
        self.elements.iter().map(|&g| self.parent.name(g)).collect()
    }
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in it {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    seen.iter().all(|&s| s)
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group_axioms(g: &Group) {
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, g.inverse(a)), e);
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn permutation_closures() {
        let z2 = Group::from_permutations(&[vec![1, 0]], DEFAULT_ORDER_LIMIT).unwrap();
        assert_eq!(z2.order(), 2);

        let v4 = Group::from_permutations(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]], 512).unwrap();
        assert_eq!((v4.order(), v4.exponent()), (4, 2));

        let s3 = Group::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]], 512).unwrap();
        assert_eq!((s3.order(), s3.exponent()), (6, 6));
        assert!(!s3.is_abelian());
        check_group_axioms(&s3);
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.name(0), "()");
    }

    #[test]
    fn permutation_errors() {
        assert_eq!(
            Group::from_permutations(&[vec![0, 0]], 512),
            Err(GroupError::BadPermutation {
                index: 0,
                degree: 2
            })
        );
        assert!(matches!(
            Group::from_permutations(&[vec![1, 0], vec![0, 2, 1]], 512),
            Err(GroupError::MixedDegrees(2, 3))
        ));
        let s4 = [vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
        assert_eq!(
            Group::from_permutations(&s4, 10),
            Err(GroupError::TooLarge { limit: 10 })
        );
        assert_eq!(Group::from_permutations(&s4, 24).unwrap().order(), 24);
    }

    #[test]
    fn table_validation_names_offender() {
        let bad_row = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(
            Group::from_table(bad_row, None),
            Err(GroupError::RowNotPermutation { row: 1, order: 2 })
        );
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(
            Group::from_table(ragged, None),
            Err(GroupError::RaggedTable { row: 1, .. })
        ));
        // A Latin square with identity and an involution, order 5: not a group.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            Group::from_table(loop5, None),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn exponents() {
        assert_eq!(Group::builtin("klein4").unwrap().exponent(), 2);
        assert_eq!(Group::builtin("z2xz4").unwrap().exponent(), 4);
        let q8 = Group::quaternion();
        check_group_axioms(&q8);
        assert_eq!(q8.exponent(), 4);
        assert!(!q8.is_abelian());
        // only one involution in Q8
        let involutions = q8.elements().filter(|&a| q8.element_order(a) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let v4 = Group::builtin("klein4").unwrap();
        let cs = v4.cyclic_subgroups();
        assert_eq!(
            cs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 2, 2]
        );

        let z4 = Group::cyclic(4);
        let cs = z4.cyclic_subgroups();
        assert_eq!(
            cs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );

        // {e}, three transpositions, A3; S3 itself is not cyclic.
        let s3 = Group::symmetric3();
        let cs = s3.cyclic_subgroups();
        assert_eq!(
            cs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 3]
        );
    }

    #[test]
    fn generated_subgroups() {
        let v4 = Group::builtin("klein4").unwrap();
        assert_eq!(v4.generate(&[]).unwrap().order(), 1);
        assert!(v4.generate(&v4.generators()).unwrap().is_whole());
        assert!(v4.generate(&[1, 2]).unwrap().is_whole());
        assert!(v4.generate(&[9]).is_err());
    }

    #[test]
    fn subgroup_lattices() {
        let counts = [
            ("klein4", 5),
            ("z4", 3),
            ("s3", 6),
            ("q8", 6),
            ("z2xz2xz2", 16),
            ("z3xz3", 6),
        ];
        for (name, expected) in counts {
            let g = Group::builtin(name).unwrap();
            let subs = g.all_subgroups();
            assert_eq!(subs.len(), expected, "{name}");
            for h in &subs {
                assert_eq!(g.order() % h.order(), 0);
            }
        }
    }

    #[test]
    fn standalone_subgroup() {
        let q8 = Group::quaternion();
        let h = q8.generate(&[2]).unwrap();
        let g = h.to_group();
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 4);
        assert_eq!(h.names(), vec!["1", "-1", "i", "-i"]);
        check_group_axioms(&g);
    }

    #[test]
    fn json_inputs() {
        let g = Group::from_json(r#"{"permutations": [[1,2,0],[1,0,2]]}"#, 512).unwrap();
        assert_eq!(g.order(), 6);
        let g = Group::from_json(r#"{"table": [[0,1],[1,0]], "names": ["e","s"]}"#, 512).unwrap();
        assert_eq!(g.name(1), "s");
        let err = Group::from_json(r#"{"table": [[0,1],[0,1]]}"#, 512).unwrap_err();
        assert_eq!(err, GroupError::ColumnNotPermutation { col: 0, order: 2 });
        assert!(Group::from_json("{}", 512).is_err());
    }

    #[test]
    fn builtins() {
        for name in [
            "z2",
            "z3",
            "z6",
            "cyclic:5",
            "product:2,3",
            "lgroup:3,1",
            "lgroup:2,2",
        ] {
            let g = Group::builtin(name).unwrap();
            check_group_axioms(&g);
        }
        assert_eq!(Group::builtin("lgroup:2,2").unwrap().order(), 8);
        assert!(Group::builtin("nope").is_err());
        assert!(Group::builtin("lgroup:2").is_err());
    }
}
