//! Triangulation file format (UTF-8 JSON).
//!
//! ```json
//! { "tets": 2,
//!   "gluings": [ { "tet": 0, "face": 0, "to_tet": 1, "to_face": 1,
//!                  "perm": { "a": 0, "b": 3, "c": 2 } }, ... ],
//!   "meridian": [ "B0", "B5" ] }
//! ```
//!
//! Every `(tet, face)` appears once as a source. `perm` sends the three
//! vertices other than `face`, in ascending order, to their images.

use serde::{Deserialize, Serialize};

use super::{Gluing, IdealTriangulation};
use crate::error::{Error, Result};
use crate::perm::{others, Perm4};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRecord {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingRecord {
    pub tet: usize,
    pub face: u8,
    pub to_tet: usize,
    pub to_face: u8,
    pub perm: PermRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub tets: usize,
    pub gluings: Vec<GluingRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub meridian: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub triangulation: IdealTriangulation,
    pub meridian: Vec<String>,
}

pub fn parse_triangulation(text: &str) -> Result<IdealTriangulation> {
    parse_input(text).map(|p| p.triangulation)
}

pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let file: TriangulationFile =
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    let tri = from_file(&file)?;
    Ok(ParsedInput {
        triangulation: tri,
        meridian: file.meridian,
    })
}

pub fn from_file(file: &TriangulationFile) -> Result<IdealTriangulation> {
    let t = file.tets;
    if t == 0 {
        return Err(Error::Syntax("\"tets\" must be at least 1".into()));
    }
    let mut table: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; t];
    for rec in &file.gluings {
        if rec.tet >= t || rec.to_tet >= t || rec.face > 3 || rec.to_face > 3 {
            return Err(Error::Syntax(format!(
                "gluing record out of range: tet {} face {} -> tet {} face {}",
                rec.tet, rec.face, rec.to_tet, rec.to_face
            )));
        }
        let slot = &mut table[rec.tet][rec.face as usize];
        if slot.is_some() {
            return Err(Error::FaceGluedTwice {
                tet: rec.tet,
                face: rec.face,
            });
        }
        let src = others(rec.face);
        let mut images = [0u8; 4];
        images[rec.face as usize] = rec.to_face;
        images[src[0] as usize] = rec.perm.a;
        images[src[1] as usize] = rec.perm.b;
        images[src[2] as usize] = rec.perm.c;
        let perm = Perm4::from_images(images).ok_or(Error::BadPermutation {
            tet: rec.tet,
            face: rec.face,
        })?;
        *slot = Some(Gluing {
            tet: rec.to_tet,
            face: rec.to_face,
            perm,
        });
    }
    let mut gluings = Vec::with_capacity(t);
    for (tet, row) in table.iter().enumerate() {
        let mut out = [Gluing {
            tet: 0,
            face: 0,
            perm: Perm4::IDENTITY,
        }; 4];
        for face in 0..4u8 {
            out[face as usize] = row[face as usize].ok_or(Error::DanglingFace { tet, face })?;
        }
        gluings.push(out);
    }
    IdealTriangulation::new(gluings)
}

pub fn to_file(tri: &IdealTriangulation, meridian: Vec<String>) -> TriangulationFile {
    let mut gluings = Vec::new();
    for tet in 0..tri.tet_count() {
        for face in 0..4u8 {
            let g = tri.gluing(tet, face);
            let src = others(face);
            gluings.push(GluingRecord {
                tet,
                face,
                to_tet: g.tet,
                to_face: g.face,
                perm: PermRecord {
                    a: g.perm.apply(src[0]),
                    b: g.perm.apply(src[1]),
                    c: g.perm.apply(src[2]),
                },
            });
        }
    }
    TriangulationFile {
        tets: tri.tet_count(),
        gluings,
        meridian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn census_fixture_parses() {
        let parsed = parse_input(fixtures::FIGURE_EIGHT_JSON).unwrap();
        assert_eq!(parsed.triangulation.tet_count(), 2);
        assert!(!parsed.meridian.is_empty());
    }

    #[test]
    fn dangling_face_rejected() {
        let mut file: TriangulationFile =
            serde_json::from_str(fixtures::FIGURE_EIGHT_JSON).unwrap();
        file.gluings.retain(|g| !(g.tet == 1 && g.face == 2));
        let err = from_file(&file).unwrap_err();
        assert!(matches!(err, Error::DanglingFace { tet: 1, face: 2 }));
        assert!(err.to_string().contains("dangling face"));
    }

    #[test]
    fn self_gluing_with_identity_rejected() {
        let mut file: TriangulationFile =
            serde_json::from_str(fixtures::FIGURE_EIGHT_JSON).unwrap();
        for g in file.gluings.iter_mut() {
            if g.tet == 0 && g.face == 0 {
                g.to_tet = 0;
                g.to_face = 0;
                g.perm = PermRecord { a: 1, b: 2, c: 3 };
            }
        }
        assert!(from_file(&file).is_err());
    }

    #[test]
    fn duplicate_and_bad_perm_rejected() {
        let mut file: TriangulationFile =
            serde_json::from_str(fixtures::FIGURE_EIGHT_JSON).unwrap();
        let dup = file.gluings[0].clone();
        file.gluings.push(dup);
        assert!(matches!(
            from_file(&file),
            Err(Error::FaceGluedTwice { .. })
        ));

        let mut file: TriangulationFile =
            serde_json::from_str(fixtures::FIGURE_EIGHT_JSON).unwrap();
        file.gluings[0].perm.a = file.gluings[0].perm.b;
        assert!(matches!(
            from_file(&file),
            Err(Error::BadPermutation { .. })
        ));
    }

    #[test]
    fn syntax_error_reported() {
        assert!(matches!(
            parse_triangulation("{ not json"),
            Err(Error::Syntax(_))
        ));
    }

    #[test]
    fn file_round_trip() {
        let tri = fixtures::figure_eight();
        let text = serde_json::to_string(&to_file(&tri, vec![])).unwrap();
        assert_eq!(parse_triangulation(&text).unwrap(), tri);
    }
}
