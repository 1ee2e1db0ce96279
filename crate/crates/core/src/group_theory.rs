//! Symmetric-square decompositions: the SO(3) even-ladder rule and
//! finite-point-group decompositions via character theory over data-file
//! character tables.
//!
//! Tables are for rotation groups (I, O, T, D_n, C_n) with real characters;
//! complex-conjugate irrep pairs of the cyclic and tetrahedral groups are
//! folded into real two-dimensional irreps, which carry row norm 2 instead
//! of 1. Multiplicities are therefore computed as <chi_i, chi_sym> / <chi_i,
//! chi_i>. The gerade-subscripted labels of the full groups (I_h, O_h, T_h)
//! follow by appending g: symmetric squares of gerade irreps are gerade.

use crate::error::{Error, Result};
use serde::Serialize;

pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;

/// Golden ratio tokens allowed in table files.
pub const PHI: f64 = 1.618033988749894848204586834365638118_f64;
pub const PSI: f64 = 1.0 - PHI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: usize,
    /// Index of the class containing the squares of this class's elements.
    pub square_class: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    pub characters: Vec<f64>,
    /// Row norm <chi, chi>: 1 for absolutely irreducible rows, 2 for folded
    /// complex-conjugate pairs.
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub classes: Vec<ConjugacyClass>,
    pub irreps: Vec<Irrep>,
}

/// One symmetric-square decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionResult {
    pub group: String,
    pub irrep: String,
    pub terms: Vec<(String, usize)>,
    pub input_dim: usize,
    pub total_dim: usize,
}

impl DecompositionResult {
    /// Same terms with gerade subscripts appended (I -> I_h labels etc).
    pub fn gerade_terms(&self) -> Vec<(String, usize)> {
        self.terms
            .iter()
            .map(|(label, m)| (format!("{label}g"), *m))
            .collect()
    }
}

impl CharacterTable {
    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.label == label)
    }

    fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| c.size as f64 * a[i] * b[i])
            .sum::<f64>()
            / self.order as f64
    }

    /// Validate class sizes, row orthogonality (norms 1 or 2) and the square
    /// map against every one-dimensional irrep.
    pub fn validate(&mut self) -> Result<()> {
        let sum: usize = self.classes.iter().map(|c| c.size).sum();
        if sum != self.order {
            return Err(Error::BadTable {
                group: self.group.clone(),
                reason: format!("class sizes sum to {sum}, order is {}", self.order),
            });
        }
        for c in &self.classes {
            if c.square_class >= self.classes.len() {
                return Err(Error::BadTable {
                    group: self.group.clone(),
                    reason: format!("class {} has invalid square map", c.label),
                });
            }
        }
        for irrep in &self.irreps {
            if irrep.characters.len() != self.classes.len() {
                return Err(Error::BadTable {
                    group: self.group.clone(),
                    reason: format!("irrep {} has wrong character count", irrep.label),
                });
            }
            if (irrep.characters[0] - irrep.dim as f64).abs() > ORTHOGONALITY_TOLERANCE {
                return Err(Error::BadTable {
                    group: self.group.clone(),
                    reason: format!("irrep {}: chi(E) differs from its dimension", irrep.label),
                });
            }
        }
        // row orthogonality
        for i in 0..self.irreps.len() {
            for j in i..self.irreps.len() {
                let inner = self.inner(&self.irreps[i].characters, &self.irreps[j].characters);
                if i == j {
                    let norm = inner.round();
                    if (inner - norm).abs() > ORTHOGONALITY_TOLERANCE
                        || !(norm == 1.0 || norm == 2.0)
                    {
                        return Err(Error::BadTable {
                            group: self.group.clone(),
                            reason: format!(
                                "irrep {} has norm {inner}, expected 1 or 2",
                                self.irreps[i].label
                            ),
                        });
                    }
                } else if inner.abs() > ORTHOGONALITY_TOLERANCE {
                    return Err(Error::BadTable {
                        group: self.group.clone(),
                        reason: format!(
                            "irreps {} and {} are not orthogonal (<.,.> = {inner})",
                            self.irreps[i].label, self.irreps[j].label
                        ),
                    });
                }
            }
        }
        for irrep in &mut self.irreps {
            let inner = irrep
                .characters
                .iter()
                .zip(&self.classes)
                .map(|(x, c)| c.size as f64 * x * x)
                .sum::<f64>()
                / self.order as f64;
            irrep.norm = inner.round();
        }
        // square map consistency: every 1-dim irrep is a homomorphism
        for irrep in self.irreps.iter().filter(|r| r.dim == 1) {
            for (i, c) in self.classes.iter().enumerate() {
                let expect = irrep.characters[i] * irrep.characters[i];
                let got = irrep.characters[c.square_class];
                if (expect - got).abs() > ORTHOGONALITY_TOLERANCE {
                    return Err(Error::BadTable {
                        group: self.group.clone(),
                        reason: format!(
                            "square map fails for 1-dim irrep {} on class {}",
                            irrep.label, c.label
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// chi_sym(g) = (chi(g)^2 + chi(g^2)) / 2 for the chosen irrep.
    pub fn symmetric_square_characters(&self, irrep: usize) -> Vec<f64> {
        let chi = &self.irreps[irrep].characters;
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| 0.5 * (chi[i] * chi[i] + chi[c.square_class]))
            .collect()
    }
}

/// Decompose the symmetric square of an irrep into irreps of the same table.
pub fn finite_symmetric_square(
    table: &CharacterTable,
    irrep_label: &str,
) -> Result<DecompositionResult> {
    let idx = table
        .irrep_index(irrep_label)
        .ok_or_else(|| Error::UnknownIrrep {
            group: table.group.clone(),
            irrep: irrep_label.to_string(),
        })?;
    let chi_sym = table.symmetric_square_characters(idx);
    let d = table.irreps[idx].dim;
    let expect_dim = d * (d + 1) / 2;

    let mut terms = Vec::new();
    let mut total = 0usize;
    for irrep in &table.irreps {
        let m = table.inner(&irrep.characters, &chi_sym) / irrep.norm;
        let rounded = m.round();
        if (m - rounded).abs() > MULTIPLICITY_TOLERANCE || rounded < -0.5 {
            return Err(Error::NonIntegralMultiplicity {
                irrep: irrep.label.clone(),
                value: m,
                err: (m - rounded).abs(),
            });
        }
        let rounded = rounded as usize;
        if rounded > 0 {
            terms.push((irrep.label.clone(), rounded));
            total += rounded * irrep.dim;
        }
    }
    if total != expect_dim {
        return Err(Error::BadTable {
            group: table.group.clone(),
            reason: format!(
                "symmetric square of {irrep_label} has dimension {total}, expected {expect_dim}"
            ),
        });
    }
    Ok(DecompositionResult {
        group: table.group.clone(),
        irrep: irrep_label.to_string(),
        terms,
        input_dim: d,
        total_dim: total,
    })
}

/// Symmetric part of D^l (x) D^l: the even ladder D^0, D^2, ..., D^{2l}.
pub fn so3_symmetric_square(l: f64) -> Result<Vec<u32>> {
    if l < 0.0 || !l.is_finite() {
        return Err(Error::InvalidParameter(format!("bad angular momentum {l}")));
    }
    if (l - l.round()).abs() > 1e-9 {
        return Err(Error::HalfIntegerAngularMomentum(format!("{l}")));
    }
    let l = l.round() as u32;
    Ok((0..=l).map(|k| 2 * k).collect())
}

/// Symbolic interaction-term labels H^0, H^2, ..., H^{2l} mirroring the
/// SO(3) symmetric square (labels only; no operator content).
pub fn decompose_jt_hamiltonian_labels(l: f64) -> Result<Vec<String>> {
    Ok(so3_symmetric_square(l)?
        .into_iter()
        .map(|k| format!("H^{k}"))
        .collect())
}

// ---- file format ------------------------------------------------------------

fn value_to_token(v: f64) -> String {
    if v == PHI {
        return "PHI".to_string();
    }
    if v == PSI {
        return "PSI".to_string();
    }
    if v == v.round() && v.abs() < 1e15 {
        return format!("{}", v as i64);
    }
    format!("{v}")
}

fn token_to_value(token: &str, line: usize) -> Result<f64> {
    match token {
        "PHI" => Ok(PHI),
        "PSI" => Ok(PSI),
        _ => token.parse().map_err(|_| Error::TableParse {
            line,
            reason: format!("bad numeric token `{token}`"),
        }),
    }
}

/// Parse the line-oriented table format:
/// ```text
/// group <name> order <order>
/// class <label> <size> <square-class-label>
/// irrep <label> <dim> <character per class...>
/// ```
pub fn load_character_table(text: &str) -> Result<CharacterTable> {
    let mut group: Option<(String, usize)> = None;
    let mut raw_classes: Vec<(String, usize, String)> = Vec::new();
    let mut raw_irreps: Vec<(String, usize, Vec<f64>)> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line_number = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "group" => {
                if tokens.len() != 4 || tokens[2] != "order" {
                    return Err(Error::TableParse {
                        line: line_number,
                        reason: "expected `group <name> order <order>`".to_string(),
                    });
                }
                let order = tokens[3].parse().map_err(|_| Error::TableParse {
                    line: line_number,
                    reason: format!("bad order `{}`", tokens[3]),
                })?;
                group = Some((tokens[1].to_string(), order));
            }
            "class" => {
                if tokens.len() != 4 {
                    return Err(Error::TableParse {
                        line: line_number,
                        reason: "expected `class <label> <size> <square-class>`".to_string(),
                    });
                }
                let size = tokens[2].parse().map_err(|_| Error::TableParse {
                    line: line_number,
                    reason: format!("bad class size `{}`", tokens[2]),
                })?;
                raw_classes.push((tokens[1].to_string(), size, tokens[3].to_string()));
            }
            "irrep" => {
                if tokens.len() < 3 {
                    return Err(Error::TableParse {
                        line: line_number,
                        reason: "expected `irrep <label> <dim> <characters...>`".to_string(),
                    });
                }
                let dim = tokens[2].parse().map_err(|_| Error::TableParse {
                    line: line_number,
                    reason: format!("bad dimension `{}`", tokens[2]),
                })?;
                let chars = tokens[3..]
                    .iter()
                    .map(|t| token_to_value(t, line_number))
                    .collect::<Result<Vec<f64>>>()?;
                raw_irreps.push((tokens[1].to_string(), dim, chars));
            }
            other => {
                return Err(Error::TableParse {
                    line: line_number,
                    reason: format!("unknown directive `{other}`"),
                });
            }
        }
    }

    let (group, order) = group.ok_or(Error::TableParse {
        line: 0,
        reason: "missing group header".to_string(),
    })?;
    let labels: Vec<String> = raw_classes.iter().map(|(l, _, _)| l.clone()).collect();
    let classes = raw_classes
        .into_iter()
        .map(|(label, size, square)| {
            let square_class =
                labels
                    .iter()
                    .position(|l| *l == square)
                    .ok_or_else(|| Error::BadTable {
                        group: group.clone(),
                        reason: format!("class {label}: unknown square class {square}"),
                    })?;
            Ok(ConjugacyClass {
                label,
                size,
                square_class,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let irreps = raw_irreps
        .into_iter()
        .map(|(label, dim, characters)| Irrep {
            label,
            dim,
            characters,
            norm: 1.0,
        })
        .collect();
    let mut table = CharacterTable {
        group,
        order,
        classes,
        irreps,
    };
    table.validate()?;
    Ok(table)
}

/// Canonical serialization; `serialize(load(text)) == text` for files written
/// in canonical form.
pub fn serialize_character_table(table: &CharacterTable) -> String {
    let mut out = format!("group {} order {}\n", table.group, table.order);
    for c in &table.classes {
        out.push_str(&format!(
            "class {} {} {}\n",
            c.label,
            c.size,
            table.classes[c.square_class].label
        ));
    }
    for r in &table.irreps {
        out.push_str(&format!("irrep {} {}", r.label, r.dim));
        for v in &r.characters {
            out.push(' ');
            out.push_str(&value_to_token(*v));
        }
        out.push('\n');
    }
    out
}

// ---- bundled tables and generators --------------------------------------------

pub const TABLE_I: &str = include_str!("../data/point_group_i.tbl");
pub const TABLE_O: &str = include_str!("../data/point_group_o.tbl");
pub const TABLE_T: &str = include_str!("../data/point_group_t.tbl");

/// Look up a bundled or generated table by name: "I", "O", "T", "Cn", "Dn"
/// for n <= 12.
pub fn table_by_name(name: &str) -> Result<CharacterTable> {
    let bad = || Error::BadTable {
        group: name.to_string(),
        reason: "expected I, O, T, Cn or Dn".to_string(),
    };
    match name {
        "I" => load_character_table(TABLE_I),
        "O" => load_character_table(TABLE_O),
        "T" => load_character_table(TABLE_T),
        _ => {
            let (family, rest) = if let Some(rest) = name.strip_prefix('C') {
                ('C', rest)
            } else if let Some(rest) = name.strip_prefix('D') {
                ('D', rest)
            } else {
                return Err(bad());
            };
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n == 0 || n > 12 {
                return Err(Error::BadTable {
                    group: name.to_string(),
                    reason: "generated families cover 1 <= n <= 12".to_string(),
                });
            }
            match family {
                'C' => cyclic_table(n),
                _ => dihedral_table(n),
            }
        }
    }
}

fn snap(v: f64) -> f64 {
    if (v - v.round()).abs() < 1e-12 {
        v.round()
    } else {
        v
    }
}

/// Real-form character table of the cyclic group C_n: trivial irrep A1, the
/// alternating B for even n, and folded conjugate pairs E_j of dimension 2.
pub fn cyclic_table(n: usize) -> Result<CharacterTable> {
    let classes: Vec<ConjugacyClass> = (0..n)
        .map(|k| ConjugacyClass {
            label: class_power_label("C", n, k),
            size: 1,
            square_class: (2 * k) % n,
        })
        .collect();
    let mut irreps = vec![Irrep {
        label: "A1".to_string(),
        dim: 1,
        characters: vec![1.0; n],
        norm: 1.0,
    }];
    if n.is_multiple_of(2) {
        irreps.push(Irrep {
            label: "B".to_string(),
            dim: 1,
            characters: (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect(),
            norm: 1.0,
        });
    }
    let pairs = (n.saturating_sub(1)) / 2;
    for jj in 1..=pairs {
        let label = if pairs == 1 {
            "E".to_string()
        } else {
            format!("E{jj}")
        };
        let characters = (0..n)
            .map(|k| snap(2.0 * (2.0 * std::f64::consts::PI * (jj * k) as f64 / n as f64).cos()))
            .collect();
        irreps.push(Irrep {
            label,
            dim: 2,
            characters,
            norm: 2.0,
        });
    }
    let mut table = CharacterTable {
        group: format!("C{n}"),
        order: n,
        classes,
        irreps,
    };
    table.validate()?;
    Ok(table)
}

fn class_power_label(stem: &str, n: usize, k: usize) -> String {
    if k == 0 {
        "E".to_string()
    } else if k == 1 {
        format!("{stem}{n}")
    } else {
        format!("{stem}{n}^{k}")
    }
}

/// Character table of the dihedral rotation group D_n.
pub fn dihedral_table(n: usize) -> Result<CharacterTable> {
    if n < 2 {
        // D_1 is just a two-element group; expose it through C2's table shape
        let mut table = CharacterTable {
            group: "D1".to_string(),
            order: 2,
            classes: vec![
                ConjugacyClass {
                    label: "E".to_string(),
                    size: 1,
                    square_class: 0,
                },
                ConjugacyClass {
                    label: "C2'".to_string(),
                    size: 1,
                    square_class: 0,
                },
            ],
            irreps: vec![
                Irrep {
                    label: "A1".to_string(),
                    dim: 1,
                    characters: vec![1.0, 1.0],
                    norm: 1.0,
                },
                Irrep {
                    label: "A2".to_string(),
                    dim: 1,
                    characters: vec![1.0, -1.0],
                    norm: 1.0,
                },
            ],
        };
        table.validate()?;
        return Ok(table);
    }

    let even = n.is_multiple_of(2);
    let rot_pairs = if even { n / 2 - 1 } else { (n - 1) / 2 };

    // classes: E, rotation pairs {C_n^k, C_n^-k}, [C2 for even n], reflections
    let mut classes = vec![ConjugacyClass {
        label: "E".to_string(),
        size: 1,
        square_class: 0,
    }];
    let rot_class = |k: usize| -> usize {
        // class index holding C_n^k
        let folded = k.min(n - k) % n;
        if folded == 0 {
            0
        } else {
            folded // rotation pair classes start at index 1 with C_n^1
        }
    };
    for k in 1..=rot_pairs {
        classes.push(ConjugacyClass {
            label: class_power_label("C", n, k),
            size: 2,
            square_class: rot_class((2 * k) % n),
        });
    }
    if even {
        classes.push(ConjugacyClass {
            label: "C2".to_string(),
            size: 1,
            square_class: 0,
        });
    }
    let n_rot_classes = classes.len();
    classes.push(ConjugacyClass {
        label: "C2'".to_string(),
        size: if even { n / 2 } else { n },
        square_class: 0,
    });
    if even {
        classes.push(ConjugacyClass {
            label: "C2''".to_string(),
            size: n / 2,
            square_class: 0,
        });
    }
    let n_classes = classes.len();

    // characters per class for a rotation exponent function
    let rot_char = |f: &dyn Fn(usize) -> f64| -> Vec<f64> {
        let mut row = vec![0.0; n_classes];
        for (k, slot) in row.iter_mut().enumerate().take(rot_pairs + 1) {
            *slot = f(k);
        }
        if even {
            row[n_rot_classes - 1] = f(n / 2);
        }
        row
    };

    let mut irreps = Vec::new();
    let mut a1 = rot_char(&|_| 1.0);
    a1[n_rot_classes] = 1.0;
    if even {
        a1[n_classes - 1] = 1.0;
    }
    irreps.push(Irrep {
        label: "A1".to_string(),
        dim: 1,
        characters: a1,
        norm: 1.0,
    });
    let mut a2 = rot_char(&|_| 1.0);
    a2[n_rot_classes] = -1.0;
    if even {
        a2[n_classes - 1] = -1.0;
    }
    irreps.push(Irrep {
        label: "A2".to_string(),
        dim: 1,
        characters: a2,
        norm: 1.0,
    });
    if even {
        let alt = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut b1 = rot_char(&alt);
        b1[n_rot_classes] = 1.0;
        b1[n_classes - 1] = -1.0;
        irreps.push(Irrep {
            label: "B1".to_string(),
            dim: 1,
            characters: b1,
            norm: 1.0,
        });
        let mut b2 = rot_char(&alt);
        b2[n_rot_classes] = -1.0;
        b2[n_classes - 1] = 1.0;
        irreps.push(Irrep {
            label: "B2".to_string(),
            dim: 1,
            characters: b2,
            norm: 1.0,
        });
    }
    for jj in 1..=rot_pairs {
        let label = if rot_pairs == 1 {
            "E".to_string()
        } else {
            format!("E{jj}")
        };
        let chars = rot_char(&|k: usize| {
            snap(2.0 * (2.0 * std::f64::consts::PI * (jj * k) as f64 / n as f64).cos())
        });
        irreps.push(Irrep {
            label,
            dim: 2,
            characters: chars,
            norm: 1.0,
        });
    }

    let mut table = CharacterTable {
        group: format!("D{n}"),
        order: 2 * n,
        classes,
        irreps,
    };
    table.validate()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedral_h_squared() {
        let table = load_character_table(TABLE_I).unwrap();
        let result = finite_symmetric_square(&table, "H").unwrap();
        assert_eq!(result.total_dim, 15);
        assert_eq!(
            result.terms,
            vec![
                ("A".to_string(), 1),
                ("G".to_string(), 1),
                ("H".to_string(), 2)
            ]
        );
        let gerade = result.gerade_terms();
        assert_eq!(gerade[0].0, "Ag");
    }

    #[test]
    fn octahedral_and_tetrahedral_e_squared() {
        let o = load_character_table(TABLE_O).unwrap();
        let result = finite_symmetric_square(&o, "E").unwrap();
        assert_eq!(
            result.terms,
            vec![("A1".to_string(), 1), ("E".to_string(), 1)]
        );

        let t = load_character_table(TABLE_T).unwrap();
        let result = finite_symmetric_square(&t, "E").unwrap();
        assert_eq!(
            result.terms,
            vec![("A".to_string(), 1), ("E".to_string(), 1)]
        );
    }

    #[test]
    fn dihedral_and_cyclic_e_squared() {
        for name in ["D3", "C3"] {
            let table = table_by_name(name).unwrap();
            let result = finite_symmetric_square(&table, "E").unwrap();
            assert_eq!(
                result.terms,
                vec![("A1".to_string(), 1), ("E".to_string(), 1)],
                "{name}"
            );
            assert_eq!(result.total_dim, 3);
        }
    }

    #[test]
    fn one_dim_irreps_square_correctly() {
        // sym^2 of a 1-dim irrep is its character square (multiplicity 1);
        // for the trivial irrep that is the trivial irrep itself
        for name in ["I", "O", "T", "C4", "D6", "C7", "D11"] {
            let table = table_by_name(name).unwrap();
            for irrep in table.irreps.iter().filter(|r| r.dim == 1) {
                let result = finite_symmetric_square(&table, &irrep.label).unwrap();
                assert_eq!(result.terms.len(), 1, "{name}:{}", irrep.label);
                assert_eq!(result.terms[0].1, 1);
                let square_label = &result.terms[0].0;
                let sq = &table.irreps[table.irrep_index(square_label).unwrap()];
                for (i, chi) in irrep.characters.iter().enumerate() {
                    assert!((chi * chi - sq.characters[i]).abs() < 1e-9);
                }
            }
            // the trivial irrep squares to itself
            let trivial = table
                .irreps
                .iter()
                .find(|r| r.characters.iter().all(|&c| (c - 1.0).abs() < 1e-12))
                .unwrap();
            let result = finite_symmetric_square(&table, &trivial.label).unwrap();
            assert_eq!(result.terms, vec![(trivial.label.clone(), 1)], "{name}");
        }
    }

    #[test]
    fn dimension_identity_for_every_bundled_irrep() {
        for name in ["I", "O", "T"] {
            let table = table_by_name(name).unwrap();
            for irrep in &table.irreps {
                let result = finite_symmetric_square(&table, &irrep.label).unwrap();
                assert_eq!(
                    result.total_dim,
                    irrep.dim * (irrep.dim + 1) / 2,
                    "{name}:{}",
                    irrep.label
                );
            }
        }
    }

    #[test]
    fn generated_families_validate() {
        for n in 1..=12 {
            cyclic_table(n).unwrap();
            dihedral_table(n).unwrap();
        }
    }

    #[test]
    fn so3_ladder() {
        assert_eq!(so3_symmetric_square(2.0).unwrap(), vec![0, 2, 4]);
        assert_eq!(so3_symmetric_square(0.0).unwrap(), vec![0]);
        // dimension identity at l = 1: 1 + 5 = 3 * 4 / 2
        let terms = so3_symmetric_square(1.0).unwrap();
        let total: u32 = terms.iter().map(|&l| 2 * l + 1).sum();
        assert_eq!(total, 6);
        assert!(matches!(
            so3_symmetric_square(0.5),
            Err(Error::HalfIntegerAngularMomentum(_))
        ));
    }

    #[test]
    fn interaction_labels() {
        assert_eq!(
            decompose_jt_hamiltonian_labels(2.0).unwrap(),
            vec!["H^0", "H^2", "H^4"]
        );
        assert_eq!(decompose_jt_hamiltonian_labels(0.0).unwrap(), vec!["H^0"]);
        for l in 0..6 {
            assert_eq!(
                decompose_jt_hamiltonian_labels(l as f64).unwrap().len(),
                l + 1
            );
        }
    }

    #[test]
    fn bundled_files_roundtrip_bit_exact() {
        for text in [TABLE_I, TABLE_O, TABLE_T] {
            let table = load_character_table(text).unwrap();
            assert_eq!(serialize_character_table(&table), text);
        }
    }

    #[test]
    fn corrupted_class_size_fails_validation() {
        let bad = TABLE_I.replace("class C2 15 E", "class C2 14 E");
        assert!(matches!(
            load_character_table(&bad),
            Err(Error::BadTable { .. })
        ));
    }

    #[test]
    fn golden_ratio_tokens() {
        let table = load_character_table(TABLE_I).unwrap();
        let t1 = &table.irreps[table.irrep_index("T1").unwrap()];
        assert_eq!(t1.characters[1], PHI);
        assert_eq!(t1.characters[2], PSI);
    }
}
