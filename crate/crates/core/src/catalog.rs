//! Named groups and corpora.
//!
//! Families are parsed from their names (`S5`, `A4`, `C7`, `D8` for the
//! dihedral group of order 8). Fixed entries are `V4`, `F21`, `X54`,
//! `S4xA5`, and three groups shipped as generator files: `L2_17`, `U3_3`
//! and `U3_4`. Every construction is checked against its expected order.

use serde::Deserialize;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::{Permutation, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Symmetric,
    Alternating,
    Cyclic,
    Dihedral,
    DirectProduct,
    RegularFromTable,
    GeneratorFile,
    Generators,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub method: Method,
    pub expected_order: u64,
    pub source_note: String,
}

/// Fixed entries, in the order `catalog:*` lists them.
pub const NAMED: &[&str] = &["V4", "S4", "A5", "F21", "X54", "S4xA5", "L2_17", "U3_3", "U3_4"];

struct DataFile {
    name: &'static str,
    text: &'static str,
}

const DATA_FILES: &[DataFile] = &[
    DataFile {
        name: "L2_17",
        text: include_str!("../data/L2_17.json"),
    },
    DataFile {
        name: "U3_3",
        text: include_str!("../data/U3_3.json"),
    },
    DataFile {
        name: "U3_4",
        text: include_str!("../data/U3_4.json"),
    },
];

/// On-disk generator file.
#[derive(Debug, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub expected_order: u64,
    pub source_note: String,
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<GeneratorFile> {
        serde_json::from_str(text).map_err(|e| GroupError::DataCorruption(e.to_string()))
    }

    /// Build the group and check its order.
    pub fn build(&self) -> Result<PermGroup> {
        let corrupt = |msg: String| GroupError::DataCorruption(format!("{}: {msg}", self.name));
        let mut gens = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.degree {
                return Err(corrupt(format!("generator {i} has length {}", g.len())));
            }
            let images: Vec<Point> = g
                .iter()
                .map(|&x| x.checked_sub(1).ok_or_else(|| corrupt(format!("generator {i} contains 0"))))
                .collect::<Result<_>>()?;
            gens.push(Permutation::from_images(images).map_err(|e| corrupt(e.to_string()))?);
        }
        let group = PermGroup::from_generators(&gens, self.degree)?;
        if group.order() != self.expected_order {
            return Err(corrupt(format!(
                "order {} but expected {}",
                group.order(),
                self.expected_order
            )));
        }
        Ok(group)
    }
}

pub fn data_file_text(name: &str) -> Option<&'static str> {
    DATA_FILES.iter().find(|f| f.name == name).map(|f| f.text)
}

fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn cycle(points: std::ops::Range<Point>, degree: usize) -> Permutation {
    Permutation::from_cycles(degree, &[points.collect()]).expect("valid cycle")
}

fn transposition(a: Point, b: Point, degree: usize) -> Permutation {
    Permutation::from_cycles(degree, &[vec![a, b]]).expect("valid transposition")
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::Parse("S0 is not a group on a positive number of points".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(0..n as Point, n));
        gens.push(transposition(0, 1, n));
    }
    PermGroup::from_generators(&gens, n)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::Parse("A0 is not a group on a positive number of points".into()));
    }
    // 3-cycles (1,2,k) generate A_n
    let gens: Vec<Permutation> = (2..n as Point)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).expect("valid"))
        .collect();
    PermGroup::from_generators(&gens, n)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::Parse("C0 is not a group".into()));
    }
    PermGroup::from_generators(&[cycle(0..n as Point, n)], n)
}

/// Dihedral group of the given order (at least 4, even) acting on `order/2` points.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order < 4 || order % 2 == 1 {
        return Err(GroupError::Parse(format!("D{order}: dihedral order must be even and at least 4")));
    }
    let n = order / 2;
    if n == 2 {
        return PermGroup::from_generators(
            &[
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            ],
            4,
        );
    }
    let reflection: Vec<Point> = (0..n as Point).map(|i| (n as Point - i) % n as Point).collect();
    PermGroup::from_generators(&[cycle(0..n as Point, n), Permutation::from_images(reflection)?], n)
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let n = a.degree() + b.degree();
    let shift = a.degree() as Point;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut img: Vec<Point> = g.images().to_vec();
        img.extend(shift..n as Point);
        gens.push(Permutation::from_images(img)?);
    }
    for g in b.generators() {
        let mut img: Vec<Point> = (0..shift).collect();
        img.extend(g.images().iter().map(|&x| x + shift));
        gens.push(Permutation::from_images(img)?);
    }
    PermGroup::from_generators(&gens, n)
}

/// Elements of the order-54 group: `(i, j, k, e)` for `x^i y^j z^k a^e`.
type X54Element = (u8, u8, u8, u8);

fn x54_index(e: X54Element) -> usize {
    ((e.3 as usize * 3 + e.0 as usize) * 3 + e.1 as usize) * 3 + e.2 as usize
}

fn x54_element(index: usize) -> X54Element {
    let k = index % 3;
    let j = (index / 3) % 3;
    let i = (index / 9) % 3;
    let e = index / 27;
    (i as u8, j as u8, k as u8, e as u8)
}

/// Product in the extraspecial group of order 27 and exponent 3:
/// `(i,j,k)(i',j',k') = (i+i', j+j', k+k'-j·i')`, which makes `z = [x, y]`.
fn heisenberg(a: (u8, u8, u8), b: (u8, u8, u8)) -> (u8, u8, u8) {
    let m = |v: i32| v.rem_euclid(3) as u8;
    (
        m(a.0 as i32 + b.0 as i32),
        m(a.1 as i32 + b.1 as i32),
        m(a.2 as i32 + b.2 as i32 - a.1 as i32 * b.0 as i32),
    )
}

/// `a` inverts `x` and `y` and fixes `z`.
fn invert_xy(v: (u8, u8, u8)) -> (u8, u8, u8) {
    ((3 - v.0) % 3, (3 - v.1) % 3, v.2)
}

fn x54_mul(a: X54Element, b: X54Element) -> X54Element {
    // (v a^e)(w a^f) = v · (a^e w a^-e) · a^(e+f)
    let w = (b.0, b.1, b.2);
    let w = if a.3 == 1 { invert_xy(w) } else { w };
    let v = heisenberg((a.0, a.1, a.2), w);
    (v.0, v.1, v.2, (a.3 + b.3) % 2)
}

/// Right regular representation of an element.
fn x54_regular(s: X54Element) -> Permutation {
    let images: Vec<Point> = (0..54)
        .map(|idx| x54_index(x54_mul(x54_element(idx), s)) as Point)
        .collect();
    Permutation::from_images(images).expect("multiplication by s is a bijection")
}

/// The named elements `a, x, y, z` of the order-54 group, as permutations of degree 54.
pub struct X54Elements {
    pub a: Permutation,
    pub x: Permutation,
    pub y: Permutation,
    pub z: Permutation,
}

pub fn x54_elements() -> X54Elements {
    X54Elements {
        a: x54_regular((0, 0, 0, 1)),
        x: x54_regular((1, 0, 0, 0)),
        y: x54_regular((0, 1, 0, 0)),
        z: x54_regular((0, 0, 1, 0)),
    }
}

/// The semidirect product of the extraspecial group of order 27 and
/// exponent 3 with an involution inverting `x` and `y`.
pub fn x54(limits: &Limits) -> Result<PermGroup> {
    let e = x54_elements();
    let g = PermGroup::from_generators(&[e.x.clone(), e.y.clone(), e.a.clone()], 54)?;
    let corrupt = |m: &str| Err(GroupError::DataCorruption(format!("X54: {m}")));
    if g.order() != 54 {
        return corrupt("order is not 54");
    }
    if e.x.commutator(&e.y) != e.z {
        return corrupt("z is not [x, y]");
    }
    let p = PermGroup::from_generators(&[e.x, e.y], 54)?;
    if p.order() != 27 || p.elements(limits)?.any(|g| g.order() > 3) {
        return corrupt("the index-2 subgroup is not of exponent 3");
    }
    let zp = crate::subgroup::center(&p, limits)?;
    if zp.order() != 3 || !zp.has(&e.z) {
        return corrupt("the center of the index-2 subgroup is not <z>");
    }
    Ok(g)
}

/// The Frobenius group of order 21: `t -> t+1`, `t -> 2t` on GF(7).
pub fn f21() -> Result<PermGroup> {
    let shift: Vec<Point> = (0..7).map(|t| (t + 1) % 7).collect();
    let double: Vec<Point> = (0..7).map(|t| (2 * t) % 7).collect();
    PermGroup::from_generators(&[Permutation::from_images(shift)?, Permutation::from_images(double)?], 7)
}

fn parse_family(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let head = chars.next()?;
    let rest: String = chars.collect();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some((head, rest.parse().ok()?))
}

/// Largest degree accepted for `S_n` / `A_n` so their orders fit the bounds.
const MAX_FAMILY_DEGREE: usize = 20;

pub fn entry(name: &str) -> Result<CatalogEntry> {
    let e = |method, expected_order, note: &str| {
        Ok(CatalogEntry {
            name: name.to_string(),
            method,
            expected_order,
            source_note: note.to_string(),
        })
    };
    match name {
        "V4" => return e(Method::Generators, 4, "Klein four-group on 4 points"),
        "F21" => return e(Method::Generators, 21, "affine maps t -> at+b of GF(7) with a a square"),
        "X54" => return e(Method::RegularFromTable, 54, "extraspecial 3^(1+2) of exponent 3 extended by an involution inverting x and y; regular action"),
        "S4xA5" => return e(Method::DirectProduct, 1440, "S4 on points 1-4 times A5 on points 5-9"),
        _ => {}
    }
    if let Some(text) = data_file_text(name) {
        let file = GeneratorFile::parse(text)?;
        return e(Method::GeneratorFile, file.expected_order, &file.source_note);
    }
    let unknown = || GroupError::UnknownGroup(name.to_string());
    let (head, n) = parse_family(name).ok_or_else(unknown)?;
    match head {
        'S' | 'A' if n == 0 || n > MAX_FAMILY_DEGREE => Err(unknown()),
        'S' => e(Method::Symmetric, factorial(n as u64).ok_or_else(unknown)?, "symmetric group"),
        'A' => e(
            Method::Alternating,
            (factorial(n as u64).ok_or_else(unknown)? / 2).max(1),
            "alternating group",
        ),
        'C' if n >= 1 => e(Method::Cyclic, n as u64, "cyclic group"),
        'D' if n >= 4 && n % 2 == 0 => e(Method::Dihedral, n as u64, "dihedral group of this order"),
        _ => Err(unknown()),
    }
}

/// Build a named group and check its order against the catalog entry.
pub fn construct(name: &str) -> Result<PermGroup> {
    construct_with(name, &Limits::default())
}

pub fn construct_with(name: &str, limits: &Limits) -> Result<PermGroup> {
    let entry = entry(name)?;
    let group = match name {
        "V4" => dihedral(4)?,
        "F21" => f21()?,
        "X54" => x54(limits)?,
        "S4xA5" => direct_product(&symmetric(4)?, &alternating(5)?)?,
        _ => match entry.method {
            Method::GeneratorFile => GeneratorFile::parse(data_file_text(name).expect("listed"))?.build()?,
            _ => {
                let (head, n) = parse_family(name).expect("entry parsed it");
                match head {
                    'S' => symmetric(n)?,
                    'A' => alternating(n)?,
                    'C' => cyclic(n)?,
                    _ => dihedral(n)?,
                }
            }
        },
    };
    if group.order() != entry.expected_order {
        return Err(GroupError::DataCorruption(format!(
            "{name}: order {} but expected {}",
            group.order(),
            entry.expected_order
        )));
    }
    Ok(group)
}

/// Largest `n` accepted by `subgroups-of:Sn`.
pub const MAX_SUBGROUP_CORPUS_DEGREE: u64 = 6;

/// Resolve a corpus description into named groups.
///
/// Accepted parts, joined with `+`: `catalog:*`, `catalog:NAME,NAME,...`,
/// `subgroups-of:Sn` (n ≤ 6, one representative per conjugacy class, each
/// becoming its own ambient group).
pub fn corpus(spec: &str, limits: &Limits) -> Result<Vec<(String, PermGroup)>> {
    let mut out = Vec::new();
    for part in spec.split('+').map(str::trim) {
        if let Some(list) = part.strip_prefix("catalog:") {
            let names: Vec<&str> = if list.trim() == "*" {
                NAMED.to_vec()
            } else {
                list.split(',').map(str::trim).collect()
            };
            for name in names {
                if name.is_empty() {
                    return Err(GroupError::Parse(format!("empty catalog name in {part:?}")));
                }
                out.push((name.to_string(), construct_with(name, limits)?));
            }
        } else if let Some(sym) = part.strip_prefix("subgroups-of:") {
            let n: u64 = sym
                .strip_prefix('S')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| GroupError::Parse(format!("expected subgroups-of:Sn, found {part:?}")))?;
            if n == 0 {
                return Err(GroupError::Parse("subgroups-of:S0".into()));
            }
            if n > MAX_SUBGROUP_CORPUS_DEGREE {
                return Err(GroupError::BoundExceeded {
                    what: "subgroups-of corpus degree",
                    needed: n,
                    bound: MAX_SUBGROUP_CORPUS_DEGREE,
                });
            }
            let s = symmetric(n as usize)?;
            let lattice = SubgroupLattice::new(&s, limits)?;
            for (k, i) in lattice.class_representatives().into_iter().enumerate() {
                let name = format!("S{n}.{k:02}[{}]", lattice.order(i));
                out.push((name, lattice.subgroup(i)));
            }
        } else {
            return Err(GroupError::Parse(format!("unrecognised corpus part {part:?}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(construct("S4").unwrap().order(), 24);
        assert_eq!(construct("S4").unwrap().degree(), 4);
        assert_eq!(construct("A5").unwrap().order(), 60);
        assert_eq!(construct("A3").unwrap().order(), 3);
        assert_eq!(construct("A2").unwrap().order(), 1);
        assert_eq!(construct("C7").unwrap().order(), 7);
        assert_eq!(construct("D8").unwrap().order(), 8);
        assert_eq!(construct("D10").unwrap().order(), 10);
        assert_eq!(construct("D4").unwrap().order(), 4);
        assert_eq!(construct("S1").unwrap().order(), 1);
        for bad in ["S0", "D7", "Q8", "", "S", "U3_5"] {
            assert!(matches!(construct(bad), Err(GroupError::UnknownGroup(_))), "{bad}");
        }
    }

    #[test]
    fn fixed_entries() {
        assert_eq!(construct("V4").unwrap().order(), 4);
        assert_eq!(construct("F21").unwrap().order(), 21);
        let g = construct("S4xA5").unwrap();
        assert_eq!((g.order(), g.degree()), (1440, 9));
        let x = construct("X54").unwrap();
        assert_eq!((x.order(), x.degree()), (54, 54));
    }

    #[test]
    fn generator_files() {
        for (name, deg, order) in [("L2_17", 18, 2448), ("U3_3", 28, 6048), ("U3_4", 65, 62400)] {
            let g = construct(name).unwrap();
            assert_eq!((g.degree(), g.order()), (deg, order), "{name}");
        }
    }

    #[test]
    fn corrupted_file_is_rejected() {
        let text = data_file_text("L2_17").unwrap();
        let mut file = GeneratorFile::parse(text).unwrap();
        file.generators[0].swap(0, 1);
        assert!(matches!(file.build(), Err(GroupError::DataCorruption(_))));
        file.generators.truncate(1);
        assert!(matches!(file.build(), Err(GroupError::DataCorruption(_))));
        assert!(matches!(GeneratorFile::parse("{"), Err(GroupError::DataCorruption(_))));
    }

    #[test]
    fn corpora() {
        let l = Limits::default();
        assert_eq!(corpus("subgroups-of:S3", &l).unwrap().len(), 4);
        assert_eq!(corpus("subgroups-of:S4", &l).unwrap().len(), 11);
        assert_eq!(corpus("subgroups-of:S5", &l).unwrap().len(), 19);
        assert!(corpus("subgroups-of:S7", &l).unwrap_err().is_resource());
        assert_eq!(corpus("catalog:A5,V4+subgroups-of:S3", &l).unwrap().len(), 6);
        assert!(corpus("bogus", &l).is_err());
        assert!(matches!(corpus("catalog:nope", &l), Err(GroupError::UnknownGroup(_))));
    }
}
