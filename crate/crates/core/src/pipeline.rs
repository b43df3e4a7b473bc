//! The full search: angled triangulation, meridional bound, disc universe,
//! fundamental solutions and candidate surfaces, collected into one report.

use serde::Serialize;

use crate::angles::AngleStructure;
use crate::boundary::{
    boundary_complex, meridional_bound, word_from_ids, word_to_ids, CurveWord, MeridionalBound,
    Side,
};
use crate::discs::enumerate_disc_types;
use crate::error::{Error, Result};
use crate::matching::{build_system, fundamental_solutions_with};
use crate::surfaces::{
    boundary_parallel_elements, candidate_vectors, coefficient_caps, describe, CandidateParameters,
    CandidateRecord, CoefficientCaps,
};
use crate::tri::{
    parse_input, search_angled_triangulation, to_file, validate, BoundarySlot, IdealTriangulation,
    SearchOptions, TriangulationFile,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryBudget {
    Fixed(u64),
    /// `(2 + n) * u * surface_count_factor`, from the meridional bound `u`.
    Auto,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    pub chi_budget: u64,
    pub boundary_budget: BoundaryBudget,
    pub depth: usize,
    pub flat_budget: usize,
    /// Defaults to `max(2, b)`.
    pub interior_cap: Option<u32>,
    pub coord_cap: Option<i64>,
    pub surface_count_factor: u64,
    /// Worker threads for candidate enumeration; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            chi_budget: 0,
            boundary_budget: BoundaryBudget::Fixed(0),
            depth: 2,
            flat_budget: 0,
            interior_cap: None,
            coord_cap: Some(20),
            surface_count_factor: 1,
            threads: None,
        }
    }
}

/// Completeness flags. Any of these makes the candidate list unsafe to
/// treat as exhaustive.
pub const FLAG_NO_ANGLE_STRUCTURE: &str = "no angle structure within search depth";
pub const FLAG_CONDITION_4: &str = "unverified condition 4";
pub const FLAG_CAP_PRUNED: &str = "disc enumeration pruned by interior cap";
pub const FLAG_TRUNCATED: &str = "fundamental solutions truncated by coordinate cap";
pub const FLAG_TERMINAL: &str = "meridional bound terminal complex is not the three-edge torus";

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub moves: usize,
    pub visited: usize,
    pub tets: usize,
    pub triangulation: TriangulationFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub config: PipelineConfig,
    pub input_tets: usize,
    pub search: Option<SearchSummary>,
    pub angles: Option<AngleStructure>,
    pub meridian_bound: Option<MeridionalBound>,
    pub n: u64,
    pub b: Option<u64>,
    pub interior_cap: Option<u32>,
    pub disc_types: Option<usize>,
    pub variables: Option<usize>,
    pub equations: Option<usize>,
    pub basis_size: Option<usize>,
    pub caps: Option<CoefficientCaps>,
    pub candidates: Vec<CandidateRecord>,
    pub flags: Vec<String>,
}

impl CandidateReport {
    pub fn complete(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Meridian given as boundary edge ids, as exit slots.
pub fn meridian_slots(tri: &IdealTriangulation, ids: &[String]) -> Result<Vec<BoundarySlot>> {
    let s = tri.boundary_surface()?;
    let w = word_from_ids(&s, ids)?;
    Ok(w.sides
        .iter()
        .map(|x| IdealTriangulation::slot_of_side(x.tri, x.side))
        .collect())
}

pub fn slots_to_word(slots: &[BoundarySlot]) -> CurveWord {
    CurveWord::new(
        slots
            .iter()
            .map(|s| Side {
                tri: IdealTriangulation::boundary_triangle(s.tet, s.vertex),
                side: IdealTriangulation::boundary_side_index(s.vertex, s.face),
            })
            .collect(),
    )
}

/// `(2 + n) * u * factor`.
pub fn auto_boundary_budget(n: u64, u: u64, factor: u64) -> Result<u64> {
    (2 + n)
        .checked_mul(u)
        .and_then(|x| x.checked_mul(factor))
        .ok_or_else(|| Error::Overflow("automatic boundary budget".into()))
}

pub fn run_pipeline(input: &str, config: &PipelineConfig) -> Result<CandidateReport> {
    match config.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| run(input, config))
        }
        None => run(input, config),
    }
}

fn run(input: &str, config: &PipelineConfig) -> Result<CandidateReport> {
    let parsed = parse_input(input).map_err(|e| e.at_stage("parse"))?;
    let tri = parsed.triangulation;
    let v = validate(&tri);
    if !v.ok {
        return Err(Error::BoundaryNotTorus(v.diagnostics.join("; ")).at_stage("validate"));
    }
    let mut report = CandidateReport {
        config: config.clone(),
        input_tets: tri.tet_count(),
        search: None,
        angles: None,
        meridian_bound: None,
        n: config.chi_budget,
        b: None,
        interior_cap: None,
        disc_types: None,
        variables: None,
        equations: None,
        basis_size: None,
        caps: None,
        candidates: Vec::new(),
        flags: Vec::new(),
    };
    let slots = if parsed.meridian.is_empty() {
        Vec::new()
    } else {
        meridian_slots(&tri, &parsed.meridian).map_err(|e| e.at_stage("parse"))?
    };
    if config.boundary_budget == BoundaryBudget::Auto && slots.is_empty() {
        return Err(Error::MissingMeridian.at_stage("pipeline"));
    }

    let opts = SearchOptions {
        depth: config.depth,
        flat_budget: config.flat_budget,
        ..SearchOptions::default()
    };
    let Some(hit) = search_angled_triangulation(&tri, &slots, &opts) else {
        report.flags.push(FLAG_NO_ANGLE_STRUCTURE.to_string());
        return Ok(report);
    };
    let tri = hit.triangulation;
    if hit.angles.has_flat() {
        report.flags.push(FLAG_CONDITION_4.to_string());
    }
    let complex = tri.boundary_surface().map_err(|e| e.at_stage("search"))?;
    let meridian = (!slots.is_empty()).then(|| slots_to_word(&hit.meridian));
    report.search = Some(SearchSummary {
        moves: hit.moves,
        visited: hit.visited,
        tets: tri.tet_count(),
        triangulation: to_file(
            &tri,
            meridian
                .as_ref()
                .map_or_else(Vec::new, |m| word_to_ids(&complex, m)),
        ),
    });
    report.angles = Some(hit.angles.clone());

    if let Some(m) = &meridian {
        let torus = boundary_complex(&tri).map_err(|e| e.at_stage("meridian-bound"))?;
        let mb = meridional_bound(&torus, m).map_err(|e| e.at_stage("meridian-bound"))?;
        if mb.deviation.is_some() {
            report.flags.push(FLAG_TERMINAL.to_string());
        }
        report.meridian_bound = Some(mb);
    }
    let b = match config.boundary_budget {
        BoundaryBudget::Fixed(b) => b,
        BoundaryBudget::Auto => {
            let u = report
                .meridian_bound
                .as_ref()
                .map(|m| m.u)
                .expect("meridian present");
            auto_boundary_budget(config.chi_budget, u, config.surface_count_factor)
                .map_err(|e| e.at_stage("pipeline"))?
        }
    };
    report.b = Some(b);
    let b_max = u32::try_from(b)
        .map_err(|_| Error::Overflow(format!("boundary budget {b}")).at_stage("discs"))?;
    let cap = config.interior_cap.unwrap_or(b_max.max(2));
    report.interior_cap = Some(cap);

    let en = enumerate_disc_types(b_max, cap);
    if en.cap_pruned {
        report.flags.push(FLAG_CAP_PRUNED.to_string());
    }
    let universe = en.admissible();
    report.disc_types = Some(universe.len());
    let sys = build_system(&tri, &universe);
    report.variables = Some(sys.dimension());
    report.equations = Some(sys.rows.len());
    let b_i64 = i64::try_from(b)
        .map_err(|_| Error::Overflow(format!("boundary budget {b}")).at_stage("fundamental"))?;
    let basis = fundamental_solutions_with(&sys, config.coord_cap, Some(b_i64))
        .map_err(|e| e.at_stage("fundamental"))?;
    report.basis_size = Some(basis.elements.len());
    if basis.truncated {
        report.flags.push(FLAG_TRUNCATED.to_string());
        return Ok(report);
    }

    let params = CandidateParameters {
        n: config.chi_budget,
        b,
    };
    let links =
        boundary_parallel_elements(&tri, &sys, &basis.elements).map_err(|e| e.at_stage("caps"))?;
    let caps = coefficient_caps(&tri, &sys, &basis.elements, basis.truncated, params, &links)
        .map_err(|e| e.at_stage("caps"))?;
    let found = candidate_vectors(&tri, &sys, &basis.elements, &caps, params)
        .map_err(|e| e.at_stage("candidates"))?;
    report.caps = Some(caps);
    for c in &found {
        report.candidates.push(
            describe(&tri, &sys, c, Some(&hit.angles), meridian.as_ref())
                .map_err(|e| e.at_stage("candidates"))?,
        );
    }
    Ok(report)
}
