//! Group actions on seeds, orbit partitions and quotient exchange graphs.
//!
//! A symmetry is an automorphism of the ambient field: it fixes the frozen
//! variables up to a permutation and sends each initial cluster variable to
//! a Laurent expansion. Applying it to a seed substitutes into every cluster
//! expansion; exchange polynomials are written in slot symbols, so only
//! their frozen variables move.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, builtin_table, EquationSet, Labeling, OrbitRow};
use crate::error::{Error, Result};
use crate::explore::ExchangeGraph;
use crate::parser::{parse_laurent, serialize_laurent};
use crate::poly::{Coefficient, LaurentExpansion, Polynomial, VariableTable};
use crate::seed::Seed;

/// `k ↦ sign * k + offset` on `1..=period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexMap {
    pub sign: i64,
    pub offset: i64,
    pub period: i64,
}

impl IndexMap {
    pub fn identity(period: i64) -> Self {
        Self { sign: 1, offset: 0, period }
    }

    pub fn shift(by: i64, period: i64) -> Self {
        Self { sign: 1, offset: by, period }
    }

    /// `k ↦ c - k`.
    pub fn reflection(c: i64, period: i64) -> Self {
        Self { sign: -1, offset: c, period }
    }

    pub fn apply(&self, k: i64) -> i64 {
        (self.sign * k + self.offset - 1).rem_euclid(self.period) + 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            sign: self.sign * other.sign,
            offset: (self.sign * other.offset + self.offset).rem_euclid(self.period),
            period: self.period,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 1 && self.offset.rem_euclid(self.period) == 0
    }
}

/// A relabeling of indexed coordinates, one [`IndexMap`] per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    pub name: String,
    pub maps: Vec<(char, IndexMap)>,
}

impl CoordinateMap {
    /// All indices shifted by one.
    pub fn rotation(families: &[(char, i64)]) -> Self {
        Self { name: "rotation".into(), maps: families.iter().map(|&(f, m)| (f, IndexMap::shift(1, m))).collect() }
    }

    /// `k ↦ c_f - k` in each family `f`.
    pub fn reflection(families: &[(char, i64)], offsets: &[i64]) -> Self {
        let maps = families.iter().zip(offsets).map(|(&(f, m), &c)| (f, IndexMap::reflection(c, m))).collect();
        Self { name: "reflection".into(), maps }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let maps = self
            .maps
            .iter()
            .map(|(f, m)| {
                let o = other.maps.iter().find(|(g, _)| g == f).map(|(_, o)| *o).unwrap_or(IndexMap::identity(m.period));
                (*f, m.compose(&o))
            })
            .collect();
        Self { name: format!("{}*{}", self.name, other.name), maps }
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|(_, m)| m.is_identity())
    }

    /// Image of one coordinate name such as `x3`.
    pub fn label(&self, name: &str) -> Result<String> {
        let fam = catalog::family(name);
        let k: i64 = name[fam.len()..]
            .parse()
            .map_err(|_| Error::Symmetry(format!("{name} is not an indexed coordinate")))?;
        let mut chars = fam.chars();
        let f = match (chars.next(), chars.next()) {
            (Some(f), None) => f,
            _ => return Err(Error::Symmetry(format!("{name} is not an indexed coordinate"))),
        };
        let m = self
            .maps
            .iter()
            .find(|(g, _)| *g == f)
            .ok_or_else(|| Error::Symmetry(format!("{} does not act on {name}", self.name)))?;
        Ok(format!("{f}{}", m.1.apply(k)))
    }

    /// Rewrites every identifier of `expr` through [`Self::label`].
    pub fn relabel(&self, expr: &str) -> Result<String> {
        let mut out = String::with_capacity(expr.len());
        let mut ident = String::new();
        for c in expr.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_alphanumeric() && (!ident.is_empty() || c.is_ascii_alphabetic()) {
                ident.push(c);
                continue;
            }
            if !ident.is_empty() {
                out.push_str(&self.label(&ident)?);
                ident.clear();
            }
            out.push(c);
        }
        out.pop();
        Ok(out)
    }

    /// Variable permutation induced on a table whose names are coordinates.
    pub fn permutation(&self, table: &VariableTable) -> Result<Vec<usize>> {
        (0..table.len())
            .map(|v| {
                let image = self.label(table.name(v))?;
                table
                    .index_of(&image)
                    .ok_or_else(|| Error::Symmetry(format!("{image} is not a coordinate")))
            })
            .collect()
    }

    /// Whether the relabeling permutes the equations (up to sign).
    pub fn preserves<C: Coefficient>(&self, eqs: &EquationSet<C>) -> bool {
        let Ok(perm) = self.permutation(&eqs.table) else {
            return false;
        };
        let n = eqs.table.len();
        let mut images: Vec<Polynomial<C>> =
            eqs.equations.iter().map(|e| e.normal_form().permute_variables(&perm, n).sign_normalized()).collect();
        images.sort_by(|a, b| a.terms().cmp(b.terms()));
        images == eqs.normal_forms()
    }
}

/// First reflection `k ↦ c_f - k` that preserves `eqs` and generates a
/// dihedral group together with `rotation`.
///
/// Offsets are tried per family in lexicographic order, so the result is
/// deterministic.
pub fn search_index_reflection<C: Coefficient>(eqs: &EquationSet<C>, rotation: &CoordinateMap) -> Result<CoordinateMap> {
    if !rotation.preserves(eqs) {
        return Err(Error::Symmetry("the rotation does not preserve the equations".into()));
    }
    let order = rotation.maps.iter().map(|(_, m)| m.period).fold(1, num_integer::lcm);
    let mut powers = vec![rotation.clone()];
    for _ in 1..order {
        powers.push(rotation.compose(powers.last().unwrap()));
    }
    let periods: Vec<i64> = eqs.families.iter().map(|&(_, m)| m).collect();
    let mut offsets = vec![0i64; periods.len()];
    loop {
        let refl = CoordinateMap::reflection(eqs.families, &offsets);
        let dihedral = refl.compose(&refl).is_identity()
            && refl.compose(rotation).compose(&refl).compose(rotation).is_identity()
            && powers.iter().all(|p| p.maps != refl.maps);
        if dihedral && refl.preserves(eqs) {
            return Ok(refl);
        }
        // next offset tuple, last family fastest
        let mut k = periods.len();
        loop {
            if k == 0 {
                return Err(Error::Symmetry("no index reflection preserves the equations".into()));
            }
            k -= 1;
            offsets[k] += 1;
            if offsets[k] < periods[k] {
                break;
            }
            offsets[k] = 0;
        }
    }
}

/// A field automorphism: frozen relabeling plus images of the initial
/// cluster variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryMap<C: Coefficient = crate::Integer> {
    pub name: String,
    table: Arc<VariableTable>,
    /// image of every table variable; frozen variables go to frozen
    /// variables
    images: Vec<LaurentExpansion<C>>,
    pub order: Option<usize>,
}

impl<C: Coefficient> SymmetryMap<C> {
    /// `frozen_map[f]` is the table index of the image of frozen variable
    /// `rank + f`.
    pub fn new(
        name: impl Into<String>,
        table: Arc<VariableTable>,
        frozen_map: &[usize],
        cluster_images: Vec<LaurentExpansion<C>>,
        order: Option<usize>,
    ) -> Result<Self> {
        let n = table.rank();
        let nvars = table.len();
        if cluster_images.len() != n || frozen_map.len() != nvars - n {
            return Err(Error::Symmetry(format!(
                "expected {n} cluster images and {} frozen images",
                nvars - n
            )));
        }
        let mut seen = vec![false; nvars];
        for &v in frozen_map {
            if v < n || v >= nvars || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Symmetry("frozen map is not a permutation of the frozen variables".into()));
            }
        }
        if let Some(e) = cluster_images.iter().find(|e| e.nvars() != nvars || e.is_zero()) {
            return Err(Error::Symmetry(format!("bad cluster image {}", serialize_laurent(e, &table))));
        }
        let mut images = cluster_images;
        images.extend(frozen_map.iter().map(|&v| LaurentExpansion::variable(nvars, v)));
        Ok(Self { name: name.into(), table, images, order })
    }

    pub fn identity(table: Arc<VariableTable>) -> Self {
        let nvars = table.len();
        let images = (0..nvars).map(|v| LaurentExpansion::variable(nvars, v)).collect();
        Self { name: "identity".into(), table, images, order: Some(1) }
    }

    /// The automorphism of a built-in class induced by a coordinate
    /// relabeling.
    pub fn from_coordinates(class: &str, coords: &CoordinateMap, labels: &Labeling<C>) -> Result<Self> {
        let table = Arc::new(builtin_table(class)?);
        let frozen_map = table
            .frozen_names()
            .iter()
            .map(|f| {
                let image = coords.label(f)?;
                table.index_of(&image).ok_or_else(|| Error::Symmetry(format!("{image} is not frozen")))
            })
            .collect::<Result<Vec<_>>>()?;
        let cluster_images = catalog::initial_definitions(class)?
            .into_iter()
            .map(|d| labels.evaluate(&coords.relabel(d)?, &table))
            .collect::<Result<Vec<_>>>()?;
        let order = coords.maps.iter().map(|(_, m)| {
            let mut p = *m;
            let mut k = 1;
            while !p.is_identity() {
                p = p.compose(m);
                k += 1;
            }
            k
        });
        let order = order.fold(1, num_integer::lcm);
        Self::new(coords.name.clone(), table, &frozen_map, cluster_images, Some(order))
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn cluster_images(&self) -> &[LaurentExpansion<C>] {
        &self.images[..self.table.rank()]
    }

    /// Table index of the image of each frozen variable.
    pub fn frozen_map(&self) -> Vec<usize> {
        self.images[self.table.rank()..]
            .iter()
            .map(|e| e.numerator().leading_term().and_then(|(m, _)| m.support().next()).expect("frozen image"))
            .collect()
    }

    /// Image of an expansion.
    pub fn image(&self, e: &LaurentExpansion<C>) -> Result<LaurentExpansion<C>> {
        let num = e.numerator().evaluate(&self.images);
        let den = Polynomial::from_monomial(e.denominator().clone()).evaluate(&self.images);
        num.exact_div(&den).ok_or_else(|| {
            Error::ImageEscapes(format!(
                "{} of {} is not a Laurent polynomial",
                self.name,
                serialize_laurent(e, &self.table)
            ))
        })
    }

    /// Variable permutation when all images are (frozen or cluster)
    /// variables, used for exchange polynomials.
    fn slot_permutation(&self) -> Vec<usize> {
        let n = self.table.rank();
        (0..self.table.len())
            .map(|v| if v < n { v } else { self.frozen_map()[v - n] })
            .collect()
    }
}

/// The seed whose cluster is the image of `seed`'s cluster.
pub fn apply_symmetry<C: Coefficient>(map: &SymmetryMap<C>, seed: &Seed<C>) -> Result<Seed<C>> {
    if **seed.table() != *map.table {
        return Err(Error::Symmetry(format!("{} acts on a different table", map.name)));
    }
    let cluster = seed.cluster().iter().map(|e| map.image(e)).collect::<Result<Vec<_>>>()?;
    let perm = map.slot_permutation();
    let nvars = map.table.len();
    let exchange = seed.exchange().iter().map(|p| p.permute_variables(&perm, nvars).sign_normalized()).collect();
    Seed::from_parts(seed.table().clone(), cluster, exchange)
}

/// Generators of the standard symmetry group of a built-in class: the
/// rotation and the first index reflection.
pub fn builtin_symmetries<C: Coefficient>(class: &str) -> Result<Vec<SymmetryMap<C>>> {
    let labels = catalog::label_expansions::<C>(class)?;
    let (rotation, reflection) = match class {
        "a2-toy" => {
            let fam = &[('x', 5)];
            (CoordinateMap::rotation(fam), CoordinateMap::reflection(fam, &[3]))
        }
        _ => {
            let eqs = catalog::equations_for::<C>(class)?;
            let rotation = CoordinateMap::rotation(eqs.families);
            let reflection = search_index_reflection(&eqs, &rotation)?;
            (rotation, reflection)
        }
    };
    Ok(vec![
        SymmetryMap::from_coordinates(class, &rotation, &labels)?,
        SymmetryMap::from_coordinates(class, &reflection, &labels)?,
    ])
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymmetryFile {
    generators: Vec<GeneratorSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    name: String,
    frozen_map: BTreeMap<String, String>,
    cluster_images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
}

/// Reads generators from a symmetry file. Image expressions are Laurent
/// polynomials over the names of `table`.
pub fn parse_symmetry_file<C: Coefficient>(src: &str, table: &Arc<VariableTable>) -> Result<Vec<SymmetryMap<C>>> {
    let file: SymmetryFile = serde_json::from_str(src).map_err(|e| Error::Schema(e.to_string()))?;
    let mut out = Vec::new();
    for g in file.generators {
        let mut frozen_map = Vec::new();
        for f in table.frozen_names() {
            let image = g
                .frozen_map
                .get(f)
                .map_or(f.as_str(), String::as_str);
            frozen_map.push(
                table
                    .index_of(image)
                    .filter(|&v| table.is_frozen(v))
                    .ok_or_else(|| Error::Schema(format!("{}: {image} is not a frozen variable", g.name)))?,
            );
        }
        if let Some(k) = g.frozen_map.keys().find(|k| table.index_of(k).is_none_or(|v| !table.is_frozen(v))) {
            return Err(Error::Schema(format!("{}: {k} is not a frozen variable", g.name)));
        }
        if let Some(k) = g.cluster_images.keys().find(|k| table.index_of(k).is_none_or(|v| table.is_frozen(v))) {
            return Err(Error::Schema(format!("{}: {k} is not an initial cluster variable", g.name)));
        }
        let mut cluster_images = Vec::new();
        for name in table.cluster_names() {
            let src = g
                .cluster_images
                .get(name)
                .ok_or_else(|| Error::Schema(format!("{}: no image for {name}", g.name)))?;
            cluster_images.push(parse_laurent(src, table)?);
        }
        out.push(SymmetryMap::new(g.name, table.clone(), &frozen_map, cluster_images, g.order)?);
    }
    Ok(out)
}

pub fn serialize_symmetry_file<C: Coefficient>(maps: &[SymmetryMap<C>]) -> String {
    let generators = maps
        .iter()
        .map(|m| {
            let t = &m.table;
            let frozen_map = t
                .frozen_names()
                .iter()
                .zip(m.frozen_map())
                .map(|(f, v)| (f.clone(), t.name(v).to_string()))
                .collect();
            let cluster_images = t
                .cluster_names()
                .iter()
                .zip(m.cluster_images())
                .map(|(c, e)| (c.clone(), serialize_laurent(e, t)))
                .collect();
            GeneratorSpec { name: m.name.clone(), frozen_map, cluster_images, order: m.order }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&SymmetryFile { generators }).expect("serializable");
    s.push('\n');
    s
}

/// Permutation induced by `map` on the graph's cluster variables.
pub fn variable_permutation<C: Coefficient>(graph: &ExchangeGraph<C>, map: &SymmetryMap<C>) -> Result<Vec<usize>> {
    let index: HashMap<&LaurentExpansion<C>, usize> = graph.variables.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let perm = graph
        .variables
        .par_iter()
        .map(|v| {
            let image = map.image(v)?.sign_normalized();
            index.get(&image).copied().ok_or_else(|| {
                Error::ImageEscapes(format!(
                    "{} sends {} outside the class",
                    map.name,
                    serialize_laurent(v, &map.table)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_bijective(&perm, &map.name)?;
    Ok(perm)
}

fn check_bijective(perm: &[usize], name: &str) -> Result<()> {
    let mut hit = vec![false; perm.len()];
    for &p in perm {
        if std::mem::replace(&mut hit[p], true) {
            return Err(Error::Symmetry(format!("{name} is not injective")));
        }
    }
    Ok(())
}

/// Node permutation induced by `map` on a complete exchange graph.
///
/// Same result as [`apply_symmetry`] on every node, with the image of each
/// cluster variable computed once.
pub fn node_permutation<C: Coefficient>(graph: &ExchangeGraph<C>, map: &SymmetryMap<C>) -> Result<Vec<usize>> {
    let vperm = variable_permutation(graph, map)?;
    let fperm = map.slot_permutation();
    let nvars = map.table.len();
    let perm = graph
        .nodes
        .par_iter()
        .map(|node| {
            let cluster = node.variables.iter().map(|&v| graph.variables[vperm[v]].clone()).collect();
            let exchange =
                node.seed.exchange().iter().map(|p| p.permute_variables(&fperm, nvars).sign_normalized()).collect();
            let image = Seed::from_parts(node.seed.table().clone(), cluster, exchange)?;
            graph
                .node_of(&image.canonical_key())
                .ok_or_else(|| Error::ImageEscapes(format!("{} moves a seed outside the class", map.name)))
        })
        .collect::<Result<Vec<_>>>()?;
    check_bijective(&perm, &map.name)?;
    Ok(perm)
}

/// Whether `perm` maps each node's neighbor multiset onto the neighbor
/// multiset of its image.
pub fn is_equivariant<C: Coefficient>(graph: &ExchangeGraph<C>, perm: &[usize]) -> bool {
    (0..graph.len()).all(|v| {
        let mut image: Vec<usize> = graph.neighbors[v].iter().flatten().map(|&w| perm[w]).collect();
        let mut target: Vec<usize> = graph.neighbors[perm[v]].iter().flatten().copied().collect();
        image.sort_unstable();
        target.sort_unstable();
        image == target
    })
}

/// Orbits of the nodes of an exchange graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Node lists, each sorted; orbits ordered by their smallest node.
    pub orbits: Vec<Vec<usize>>,
    pub names: Vec<String>,
    block: Vec<usize>,
}

impl Partition {
    /// Builds a partition from block numbers, renumbering blocks by their
    /// smallest element.
    pub fn from_blocks(block: &[usize]) -> Self {
        let mut renumber = HashMap::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut out = vec![0; block.len()];
        for (v, b) in block.iter().enumerate() {
            let id = *renumber.entry(*b).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[id].push(v);
            out[v] = id;
        }
        let names = (1..=orbits.len()).map(|k| format!("O{k}")).collect();
        Self { orbits, names, block: out }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_blocks(&(0..n).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, node: usize) -> usize {
        self.block[node]
    }

    pub fn name_of(&self, node: usize) -> &str {
        &self.names[self.block[node]]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Orbit size histogram.
    pub fn size_census(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for o in &self.orbits {
            *m.entry(o.len()).or_insert(0) += 1;
        }
        m
    }
}

/// Orbits of the graph's nodes under the group generated by `gens`.
pub fn orbit_partition<C: Coefficient>(graph: &ExchangeGraph<C>, gens: &[SymmetryMap<C>]) -> Result<Partition> {
    let perms = gens.iter().map(|g| node_permutation(graph, g)).collect::<Result<Vec<_>>>()?;
    Ok(partition_by_permutations(graph.len(), &perms))
}

pub fn partition_by_permutations(n: usize, perms: &[Vec<usize>]) -> Partition {
    let mut block = vec![usize::MAX; n];
    for start in 0..n {
        if block[start] != usize::MAX {
            continue;
        }
        block[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for p in perms {
                let w = p[v];
                if block[w] == usize::MAX {
                    block[w] = start;
                    queue.push_back(w);
                }
            }
        }
    }
    Partition::from_blocks(&block)
}

/// Exchange graph modulo a partition. Loops are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub names: Vec<String>,
    pub sizes: Vec<usize>,
    /// multiplicity of each projected edge `(a, b)` with `a <= b`
    pub edges: BTreeMap<(usize, usize), usize>,
}

impl QuotientGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn loops(&self) -> Vec<&str> {
        self.edges.keys().filter(|(a, b)| a == b).map(|&(a, _)| self.names[a].as_str()).collect()
    }

    /// Distinct non-loop edges as name pairs, each pair sorted.
    pub fn adjacent_pairs(&self) -> Vec<(&str, &str)> {
        let mut v: Vec<_> = self
            .edges
            .keys()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| {
                let (x, y) = (self.names[a].as_str(), self.names[b].as_str());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        v.sort_unstable();
        v
    }
}

pub fn quotient_graph<C: Coefficient>(graph: &ExchangeGraph<C>, p: &Partition) -> QuotientGraph {
    let mut edges = BTreeMap::new();
    for e in graph.edges() {
        let (a, b) = (p.orbit_of(e.from), p.orbit_of(e.to));
        *edges.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    QuotientGraph { names: p.names.clone(), sizes: p.sizes(), edges }
}

/// Node whose cluster has exactly the given labels.
pub fn find_labeled_seed<C: Coefficient>(
    graph: &ExchangeGraph<C>,
    labels: &[String],
    cluster: &[&str],
) -> Option<usize> {
    let mut want: Vec<&str> = cluster.to_vec();
    want.sort_unstable();
    graph.nodes.iter().position(|node| {
        let mut have: Vec<&str> = node.variables.iter().map(|&v| labels[v].as_str()).collect();
        have.sort_unstable();
        have == want
    })
}

/// Renames orbits after the rows whose representative cluster they
/// contain, and lists them by name. Every orbit must contain exactly one
/// representative.
pub fn name_orbits<C: Coefficient>(
    graph: &ExchangeGraph<C>,
    p: &mut Partition,
    labels: &[String],
    rows: &[OrbitRow],
) -> Result<()> {
    let mut names: Vec<Option<String>> = vec![None; p.len()];
    for row in rows {
        let node = find_labeled_seed(graph, labels, &row.cluster)
            .ok_or_else(|| Error::Catalog(format!("no seed with the cluster of orbit {}", row.name)))?;
        let slot = &mut names[p.orbit_of(node)];
        if let Some(old) = slot {
            return Err(Error::Catalog(format!("orbits {old} and {} coincide", row.name)));
        }
        *slot = Some(row.name.to_string());
    }
    let names: Vec<String> = names
        .into_iter()
        .enumerate()
        .map(|(k, n)| n.ok_or_else(|| Error::Catalog(format!("orbit {} has no representative", p.names[k]))))
        .collect::<Result<_>>()?;
    // list orbits by name
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut rank = vec![0; p.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    p.orbits = order.iter().map(|&o| std::mem::take(&mut p.orbits[o])).collect();
    p.names = order.iter().map(|&o| names[o].clone()).collect();
    for b in &mut p.block {
        *b = rank[*b];
    }
    Ok(())
}

/// One disagreement between an orbit row and the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowMismatch {
    MissingRepresentative { row: String },
    WrongOrbit { row: String, found: String },
    Unexplored { row: String, at: String },
    Transition { row: String, at: String, expected: (String, String), found: (String, String) },
}

impl RowMismatch {
    /// Whether the disagreement concerns orbits rather than variable names.
    pub fn is_structural(&self) -> bool {
        match self {
            Self::Transition { expected, found, .. } => expected.1 != found.1,
            _ => true,
        }
    }
}

impl std::fmt::Display for RowMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::MissingRepresentative { row } => write!(f, "{row}: no seed has the representative cluster"),
            Self::WrongOrbit { row, found } => write!(f, "{row}: representative lies in orbit {found}"),
            Self::Unexplored { row, at } => write!(f, "{row}: mutation at {at} was not explored"),
            Self::Transition { row, at, expected, found } => write!(
                f,
                "{row}: mutation at {at} gives {} in orbit {}, expected {} in orbit {}",
                found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

/// Compares each row's representative seed with the graph: the variable
/// created by each mutation and the orbit it leads to.
pub fn check_orbit_rows<C: Coefficient>(
    graph: &ExchangeGraph<C>,
    p: &Partition,
    labels: &[String],
    rows: &[OrbitRow],
) -> Vec<RowMismatch> {
    let mut out = Vec::new();
    for row in rows {
        let name = row.name.to_string();
        let Some(node) = find_labeled_seed(graph, labels, &row.cluster) else {
            out.push(RowMismatch::MissingRepresentative { row: name });
            continue;
        };
        if p.name_of(node) != row.name {
            out.push(RowMismatch::WrongOrbit { row: name.clone(), found: p.name_of(node).to_string() });
        }
        let vars = &graph.nodes[node].variables;
        for (old, (new, orbit)) in row.cluster.iter().zip(row.mutations) {
            let slot = vars.iter().position(|&v| labels[v] == *old).expect("representative cluster");
            let Some(next) = graph.neighbors[node][slot] else {
                out.push(RowMismatch::Unexplored { row: name.clone(), at: old.to_string() });
                continue;
            };
            let created = graph.nodes[next].variables.iter().find(|v| !vars.contains(v)).expect("new variable");
            let found = (labels[*created].clone(), p.name_of(next).to_string());
            if found.0 != new || found.1 != orbit {
                out.push(RowMismatch::Transition {
                    row: name.clone(),
                    at: old.to_string(),
                    expected: (new.to_string(), orbit.to_string()),
                    found,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{e6_equations, E6_FAMILIES};
    use crate::Integer;

    #[test]
    fn index_maps() {
        let r = IndexMap::reflection(5, 12);
        assert_eq!(r.apply(1), 4);
        assert_eq!(r.apply(5), 12);
        assert!(r.compose(&r).is_identity());
        let s = IndexMap::shift(1, 12);
        assert_eq!(s.apply(12), 1);
        assert!(r.compose(&s).compose(&r).compose(&s).is_identity());
    }

    #[test]
    fn relabel_expressions() {
        let rot = CoordinateMap::rotation(E6_FAMILIES);
        assert_eq!(rot.relabel("x3*z3 - a3*x2 - a12*x4^2").unwrap(), "x4*z1 - a4*x3 - a1*x5^2");
        assert!(rot.label("y3").is_err());
    }

    #[test]
    fn e6_rotation_preserves_equations() {
        let eqs = e6_equations::<Integer>();
        assert!(CoordinateMap::rotation(E6_FAMILIES).preserves(&eqs));
        let mut bad = CoordinateMap::rotation(E6_FAMILIES);
        bad.maps[2].1 = IndexMap::identity(3);
        assert!(!bad.preserves(&eqs));
    }

    #[test]
    fn toy_rotation_shifts_variables() {
        let g = builtin_symmetries::<Integer>("a2-toy").unwrap();
        let t = g[0].table().clone();
        let imgs: Vec<String> = g[0].cluster_images().iter().map(|e| serialize_laurent(e, &t)).collect();
        assert_eq!(imgs, ["x2", "(1 + x2)/x1"]);
        let seed = catalog::builtin_seed::<Integer>("a2-toy").unwrap();
        let id = SymmetryMap::identity(seed.table().clone());
        assert_eq!(apply_symmetry(&id, &seed).unwrap().canonical_key(), seed.canonical_key());
    }

    #[test]
    fn symmetry_file_round_trip() {
        let g = builtin_symmetries::<Integer>("e4").unwrap();
        let text = serialize_symmetry_file(&g);
        let back = parse_symmetry_file::<Integer>(&text, g[0].table()).unwrap();
        assert_eq!(back, g);
        assert!(parse_symmetry_file::<Integer>(r#"{"generators":[{"name":"r","frozen_map":{"x1":"a1"},"cluster_images":{}}]}"#, g[0].table()).is_err());
    }
}
