//! Named-attribute tables over finite symbolic domains, with the three
//! relational operators everything else is built on: projection, conditional
//! projection and natural join.
//!
//! Relations are immutable values with set semantics. Every tuple carries a
//! stable integer id; projections keep the ids of their source tuples as
//! source sets and label each projected tuple with the smallest of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type TupleId = u32;

/// A single cell value: an index into the attribute's domain, or the
/// don't-care marker (legal only in output attributes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Sym(u8),
    DontCare,
}

impl Val {
    pub fn is_dontcare(self) -> bool {
        matches!(self, Val::DontCare)
    }
}

/// An attribute's value set. Order is fixed at declaration and defines all
/// canonical orderings downstream (partition block labels, chart layout).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    name: String,
    values: Vec<String>,
}

impl Domain {
    pub fn new(name: &str, values: &[&str]) -> Result<Domain> {
        let values: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        if values.len() < 2 {
            return Err(Error::BadDomain {
                name: name.to_string(),
                reason: "needs at least two values".into(),
            });
        }
        if values.len() > u8::MAX as usize {
            return Err(Error::BadDomain {
                name: name.to_string(),
                reason: "more than 255 values".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for v in &values {
            if v == "-" {
                return Err(Error::BadDomain {
                    name: name.to_string(),
                    reason: "`-` is reserved for don't-care".into(),
                });
            }
            if v.is_empty() || !seen.insert(v.clone()) {
                return Err(Error::BadDomain {
                    name: name.to_string(),
                    reason: format!("value `{v}` is empty or repeated"),
                });
            }
            if v.contains(|c: char| c.is_whitespace() || "{}#".contains(c)) {
                return Err(Error::BadDomain {
                    name: name.to_string(),
                    reason: format!("value `{v}` contains reserved characters"),
                });
            }
        }
        Ok(Domain {
            name: name.to_string(),
            values,
        })
    }

    /// The binary domain {0, 1}.
    pub fn binary(name: &str) -> Domain {
        Domain::new(name, &["0", "1"]).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, value: &str) -> Option<u8> {
        self.values.iter().position(|v| v == value).map(|i| i as u8)
    }

    pub fn is_binary(&self) -> bool {
        self.values == ["0", "1"]
    }
}

/// Role of an attribute inside a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Input,
    Output,
    Bridge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub domain: Domain,
    pub role: Role,
}

impl Attribute {
    pub fn input(domain: Domain) -> Attribute {
        Attribute {
            domain,
            role: Role::Input,
        }
    }

    pub fn output(domain: Domain) -> Attribute {
        Attribute {
            domain,
            role: Role::Output,
        }
    }

    pub fn bridge(domain: Domain) -> Attribute {
        Attribute {
            domain,
            role: Role::Bridge,
        }
    }

    pub fn name(&self) -> &str {
        self.domain.name()
    }
}

/// One row. `sources` records which tuples of the originating relation this
/// row came from; base rows point at themselves.
#[derive(Debug, Clone)]
pub struct Tuple {
    pub id: TupleId,
    pub values: Vec<Val>,
    pub sources: BTreeSet<TupleId>,
}

/// An in-memory relation: an ordered schema plus a duplicate-free set of
/// tuples, each with a stable id.
#[derive(Debug, Clone)]
pub struct Relation {
    schema: Vec<Attribute>,
    tuples: Vec<Tuple>,
}

impl Relation {
    /// Build a relation with sequential ids assigned in row order.
    pub fn new(schema: Vec<Attribute>, rows: Vec<Vec<Val>>) -> Result<Relation> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| (i as TupleId, r))
            .collect();
        Relation::with_ids(schema, rows)
    }

    /// Build a relation with caller-chosen tuple ids.
    pub fn with_ids(schema: Vec<Attribute>, rows: Vec<(TupleId, Vec<Val>)>) -> Result<Relation> {
        let mut names = BTreeSet::new();
        for attr in &schema {
            if !names.insert(attr.name().to_string()) {
                return Err(Error::DuplicateAttribute(attr.name().to_string()));
            }
        }
        let mut tuples = Vec::with_capacity(rows.len());
        let mut seen = BTreeSet::new();
        for (row_no, (id, values)) in rows.into_iter().enumerate() {
            if values.len() != schema.len() {
                return Err(Error::RowWidth(row_no, values.len(), schema.len()));
            }
            for (attr, &v) in schema.iter().zip(&values) {
                match v {
                    Val::DontCare => {
                        if attr.role == Role::Input {
                            return Err(Error::DontCareInInput(attr.name().to_string()));
                        }
                    }
                    Val::Sym(i) => {
                        if i as usize >= attr.domain.len() {
                            return Err(Error::ValueOutsideDomain {
                                attr: attr.name().to_string(),
                                value: format!("#{i}"),
                            });
                        }
                    }
                }
            }
            if !seen.insert(values.clone()) {
                return Err(Error::DuplicateRow(render_row(&schema, &values)));
            }
            tuples.push(Tuple {
                id,
                values,
                sources: BTreeSet::from([id]),
            });
        }
        tuples.sort_by_key(|t| t.id);
        if tuples.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::InternalCheck("repeated tuple id".into()));
        }
        Ok(Relation { schema, tuples })
    }

    /// Convenience constructor taking value names instead of indices.
    pub fn from_named(schema: Vec<Attribute>, rows: &[Vec<&str>]) -> Result<Relation> {
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != schema.len() {
                return Err(Error::RowWidth(parsed.len(), row.len(), schema.len()));
            }
            let mut vals = Vec::with_capacity(row.len());
            for (attr, tok) in schema.iter().zip(row) {
                vals.push(parse_value(attr, tok)?);
            }
            parsed.push(vals);
        }
        Relation::new(schema, parsed)
    }

    pub fn schema(&self) -> &[Attribute] {
        &self.schema
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn ids(&self) -> Vec<TupleId> {
        self.tuples.iter().map(|t| t.id).collect()
    }

    pub fn tuple(&self, id: TupleId) -> Option<&Tuple> {
        self.tuples
            .binary_search_by_key(&id, |t| t.id)
            .ok()
            .map(|i| &self.tuples[i])
    }

    pub fn attr_index(&self, name: &str) -> Result<usize> {
        self.schema
            .iter()
            .position(|a| a.name() == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn attr(&self, name: &str) -> Result<&Attribute> {
        Ok(&self.schema[self.attr_index(name)?])
    }

    pub fn attr_indices(&self, names: &[String]) -> Result<Vec<usize>> {
        let mut idx: Vec<usize> = names
            .iter()
            .map(|n| self.attr_index(n))
            .collect::<Result<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    pub fn attr_names(&self) -> Vec<String> {
        self.schema.iter().map(|a| a.name().to_string()).collect()
    }

    pub fn input_indices(&self) -> Vec<usize> {
        self.role_indices(Role::Input)
    }

    pub fn output_indices(&self) -> Vec<usize> {
        self.role_indices(Role::Output)
    }

    fn role_indices(&self, role: Role) -> Vec<usize> {
        self.schema
            .iter()
            .enumerate()
            .filter(|(_, a)| a.role == role)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn input_names(&self) -> Vec<String> {
        self.input_indices()
            .into_iter()
            .map(|i| self.schema[i].name().to_string())
            .collect()
    }

    pub fn has_dontcare(&self) -> bool {
        self.tuples
            .iter()
            .any(|t| t.values.iter().any(|v| v.is_dontcare()))
    }

    /// Render a value for display.
    pub fn value_name(&self, attr_idx: usize, v: Val) -> &str {
        match v {
            Val::DontCare => "-",
            Val::Sym(i) => &self.schema[attr_idx].domain.values()[i as usize],
        }
    }

    pub fn render_tuple(&self, t: &Tuple) -> String {
        let cells: Vec<&str> = (0..self.schema.len())
            .map(|i| self.value_name(i, t.values[i]))
            .collect();
        format!("({})", cells.join(", "))
    }

    /// Projection R[X]: distinct restrictions of tuples to `attrs`.
    /// Each output tuple is labeled with its smallest source id.
    pub fn project(&self, attrs: &[String]) -> Result<Relation> {
        let idx = self.attr_indices(attrs)?;
        let schema: Vec<Attribute> = idx.iter().map(|&i| self.schema[i].clone()).collect();
        let mut groups: BTreeMap<Vec<Val>, BTreeSet<TupleId>> = BTreeMap::new();
        for t in &self.tuples {
            let key: Vec<Val> = idx.iter().map(|&i| t.values[i]).collect();
            groups.entry(key).or_default().extend(&t.sources);
        }
        let mut tuples: Vec<Tuple> = groups
            .into_iter()
            .map(|(values, sources)| Tuple {
                id: *sources.iter().next().expect("nonempty group"),
                values,
                sources,
            })
            .collect();
        tuples.sort_by_key(|t| t.id);
        Ok(Relation { schema, tuples })
    }

    /// Conditional projection R_y[X]: project the tuples matching `cond`.
    pub fn cond_project(&self, attrs: &[String], cond: &[(String, String)]) -> Result<Relation> {
        let selected = self.select(cond)?;
        selected.project(attrs)
    }

    /// Keep the tuples whose values match every `(attribute, value)` pair.
    pub fn select(&self, cond: &[(String, String)]) -> Result<Relation> {
        let mut checks = Vec::with_capacity(cond.len());
        for (name, value) in cond {
            let i = self.attr_index(name)?;
            let v = parse_value(&self.schema[i], value)?;
            checks.push((i, v));
        }
        Ok(self.restrict(|t| checks.iter().all(|&(i, v)| t.values[i] == v)))
    }

    /// Sub-relation with the same schema and the original tuple ids.
    pub fn restrict<F: Fn(&Tuple) -> bool>(&self, keep: F) -> Relation {
        Relation {
            schema: self.schema.clone(),
            tuples: self.tuples.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Natural join. The output schema is this relation's schema followed by
    /// the other's remaining attributes; ids are reassigned in row order.
    pub fn natural_join(&self, other: &Relation) -> Result<Relation> {
        let mut shared_self = Vec::new();
        let mut shared_other = Vec::new();
        for (i, a) in self.schema.iter().enumerate() {
            if let Ok(j) = other.attr_index(a.name()) {
                if other.schema[j].domain != a.domain {
                    return Err(Error::DomainMismatch(a.name().to_string()));
                }
                shared_self.push(i);
                shared_other.push(j);
            }
        }
        if shared_self.is_empty() {
            return Err(Error::NoSharedAttribute);
        }
        let extra_other: Vec<usize> = (0..other.schema.len())
            .filter(|j| !shared_other.contains(j))
            .collect();

        let mut schema = self.schema.clone();
        schema.extend(extra_other.iter().map(|&j| other.schema[j].clone()));

        let mut by_key: BTreeMap<Vec<Val>, Vec<&Tuple>> = BTreeMap::new();
        for t in &other.tuples {
            let key: Vec<Val> = shared_other.iter().map(|&j| t.values[j]).collect();
            by_key.entry(key).or_default().push(t);
        }

        let mut rows: Vec<(Vec<Val>, BTreeSet<TupleId>)> = Vec::new();
        for s in &self.tuples {
            let key: Vec<Val> = shared_self.iter().map(|&i| s.values[i]).collect();
            if let Some(matches) = by_key.get(&key) {
                for t in matches {
                    let mut values = s.values.clone();
                    values.extend(extra_other.iter().map(|&j| t.values[j]));
                    let sources: BTreeSet<TupleId> =
                        s.sources.union(&t.sources).copied().collect();
                    rows.push((values, sources));
                }
            }
        }
        rows.sort();
        rows.dedup_by(|a, b| a.0 == b.0);
        let tuples = rows
            .into_iter()
            .enumerate()
            .map(|(i, (values, sources))| Tuple {
                id: i as TupleId,
                values,
                sources,
            })
            .collect();
        Ok(Relation { schema, tuples })
    }

    /// Equality up to attribute reordering; tuple ids, sources and roles are
    /// ignored.
    pub fn same_content(&self, other: &Relation) -> bool {
        if self.schema.len() != other.schema.len() {
            return false;
        }
        let mut mapping = Vec::with_capacity(self.schema.len());
        for a in &self.schema {
            match other.attr_index(a.name()) {
                Ok(j) if other.schema[j].domain == a.domain => mapping.push(j),
                _ => return false,
            }
        }
        let left: BTreeSet<Vec<Val>> = self.tuples.iter().map(|t| t.values.clone()).collect();
        let right: BTreeSet<Vec<Val>> = other
            .tuples
            .iter()
            .map(|t| mapping.iter().map(|&j| t.values[j]).collect())
            .collect();
        left == right
    }

    /// Append an attribute whose value is computed per tuple.
    pub fn with_attribute<F>(&self, attr: Attribute, value: F) -> Result<Relation>
    where
        F: Fn(&Tuple) -> Val,
    {
        if self.attr_index(attr.name()).is_ok() {
            return Err(Error::NameCollision(attr.name().to_string()));
        }
        let mut schema = self.schema.clone();
        schema.push(attr);
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                let mut values = t.values.clone();
                values.push(value(t));
                Tuple {
                    id: t.id,
                    values,
                    sources: t.sources.clone(),
                }
            })
            .collect();
        Ok(Relation { schema, tuples })
    }

    /// Same relation with the columns permuted into the given order; `names`
    /// must list every attribute exactly once.
    pub fn reorder_attrs(&self, names: &[String]) -> Result<Relation> {
        if names.len() != self.schema.len() {
            return Err(Error::CoverViolation(
                "reordering must mention every attribute".into(),
            ));
        }
        let perm: Vec<usize> = names
            .iter()
            .map(|n| self.attr_index(n))
            .collect::<Result<_>>()?;
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if seen[i] {
                return Err(Error::DuplicateAttribute(names[i].clone()));
            }
            seen[i] = true;
        }
        let schema: Vec<Attribute> = perm.iter().map(|&i| self.schema[i].clone()).collect();
        let tuples = self
            .tuples
            .iter()
            .map(|t| Tuple {
                id: t.id,
                values: perm.iter().map(|&i| t.values[i]).collect(),
                sources: t.sources.clone(),
            })
            .collect();
        Ok(Relation { schema, tuples })
    }

    /// Same relation with one attribute's role changed.
    pub fn with_role(&self, name: &str, role: Role) -> Result<Relation> {
        let i = self.attr_index(name)?;
        let mut schema = self.schema.clone();
        schema[i].role = role;
        Ok(Relation {
            schema,
            tuples: self.tuples.clone(),
        })
    }

    /// Replace one attribute's values; used to resolve `-` outputs.
    pub fn map_attribute<F>(&self, name: &str, f: F) -> Result<Relation>
    where
        F: Fn(&Tuple) -> Val,
    {
        let i = self.attr_index(name)?;
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                let mut values = t.values.clone();
                values[i] = f(t);
                Tuple {
                    id: t.id,
                    values,
                    sources: t.sources.clone(),
                }
            })
            .collect();
        Ok(Relation {
            schema: self.schema.clone(),
            tuples,
        })
    }

    /// Number of rows in the full input space.
    pub fn input_space_size(&self) -> Result<u64> {
        let mut size: u64 = 1;
        for i in self.input_indices() {
            size = size.saturating_mul(self.schema[i].domain.len() as u64);
            if size > (1 << 24) {
                return Err(Error::InputSpaceTooLarge(size));
            }
        }
        Ok(size)
    }

    /// Mixed-radix index of a tuple's input vector; the first input attribute
    /// is the most significant digit. For complete binary tables this is the
    /// usual minterm number.
    pub fn minterm_index(&self, t: &Tuple) -> u64 {
        let mut idx: u64 = 0;
        for i in self.input_indices() {
            let digit = match t.values[i] {
                Val::Sym(d) => d as u64,
                Val::DontCare => unreachable!("inputs are never don't-care"),
            };
            idx = idx * self.schema[i].domain.len() as u64 + digit;
        }
        idx
    }

    /// Check every input vector appears at most once; conflicting duplicates
    /// are rows that agree on the inputs but not on the outputs.
    pub fn check_unique_inputs(&self) -> Result<()> {
        let inputs = self.input_indices();
        let mut seen: BTreeMap<Vec<Val>, &Tuple> = BTreeMap::new();
        for t in &self.tuples {
            let key: Vec<Val> = inputs.iter().map(|&i| t.values[i]).collect();
            if let Some(prev) = seen.insert(key, t) {
                return Err(Error::ConflictingDuplicate(
                    self.render_tuple(prev),
                    self.render_tuple(t),
                ));
            }
        }
        Ok(())
    }

    /// Rows of the full input space missing from the relation.
    pub fn missing_input_rows(&self) -> Result<Vec<Vec<Val>>> {
        let size = self.input_space_size()?;
        let inputs = self.input_indices();
        let mut present: BTreeSet<Vec<Val>> = BTreeSet::new();
        for t in &self.tuples {
            present.insert(inputs.iter().map(|&i| t.values[i]).collect());
        }
        let mut missing = Vec::new();
        for n in 0..size {
            let vec = self.input_vector(n);
            if !present.contains(&vec) {
                missing.push(vec);
            }
        }
        Ok(missing)
    }

    fn input_vector(&self, mut n: u64) -> Vec<Val> {
        let inputs = self.input_indices();
        let mut digits = vec![Val::Sym(0); inputs.len()];
        for (slot, &i) in inputs.iter().enumerate().rev() {
            let base = self.schema[i].domain.len() as u64;
            digits[slot] = Val::Sym((n % base) as u8);
            n /= base;
        }
        digits
    }

    /// Add every missing input row with `-` outputs, then renumber.
    pub fn extend_missing(&self) -> Result<Relation> {
        let inputs = self.input_indices();
        let missing = self.missing_input_rows()?;
        let mut rows: Vec<Vec<Val>> = self.tuples.iter().map(|t| t.values.clone()).collect();
        for input_vec in missing {
            let mut row = vec![Val::DontCare; self.schema.len()];
            for (slot, &i) in inputs.iter().enumerate() {
                row[i] = input_vec[slot];
            }
            rows.push(row);
        }
        Relation::new(self.schema.clone(), rows)?.renumber_minterms()
    }

    /// Reassign ids so each tuple's id is its mixed-radix input-vector index.
    pub fn renumber_minterms(&self) -> Result<Relation> {
        self.check_unique_inputs()?;
        self.input_space_size()?;
        let mut rows: Vec<(TupleId, Vec<Val>)> = self
            .tuples
            .iter()
            .map(|t| (self.minterm_index(t) as TupleId, t.values.clone()))
            .collect();
        rows.sort_by_key(|(id, _)| *id);
        Relation::with_ids(self.schema.clone(), rows)
    }

    /// A truth table must cover the whole input space (after extension).
    pub fn require_complete(&self) -> Result<()> {
        let missing = self.missing_input_rows()?;
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingInputRows(missing.len()))
        }
    }
}

fn render_row(schema: &[Attribute], values: &[Val]) -> String {
    let cells: Vec<&str> = schema
        .iter()
        .zip(values)
        .map(|(a, &v)| match v {
            Val::DontCare => "-",
            Val::Sym(i) => a.domain.values()[i as usize].as_str(),
        })
        .collect();
    format!("({})", cells.join(", "))
}

/// Free-function form of [`Relation::same_content`].
pub fn relations_equal(a: &Relation, b: &Relation) -> bool {
    a.same_content(b)
}

pub fn parse_value(attr: &Attribute, token: &str) -> Result<Val> {
    if token == "-" {
        if attr.role == Role::Input {
            return Err(Error::DontCareInInput(attr.name().to_string()));
        }
        return Ok(Val::DontCare);
    }
    attr.domain
        .index_of(token)
        .map(Val::Sym)
        .ok_or_else(|| Error::ValueOutsideDomain {
            attr: attr.name().to_string(),
            value: token.to_string(),
        })
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.schema.iter().map(|a| a.name()).collect();
        writeln!(f, "[{}]", names.join(" "))?;
        for t in &self.tuples {
            writeln!(f, "t{}: {}", t.id, self.render_tuple(t))?;
        }
        Ok(())
    }
}
