//! Normal forms, sheet labels, the component graphs of both quotients and
//! the analysis of one-parameter families.

mod graph;
mod labels;
mod normal_form;
mod path;

pub use graph::{
    build_component_graph, component_graph, component_id, component_of_label,
    cylinder_obstruction, ComponentGraph, ComponentId, CylinderVerdict,
};
pub use labels::{
    fiber_size, is_strongly_stable_sheet, label_of, project, quotient_label, sheets, Quotient,
    SheetLabel,
};
pub use normal_form::{
    diagonal_representative, eigen_angle, n_representative, normal_form,
    singular_representative, NormalForm,
};
pub use path::{
    analyze_path, EventKind, PathEvent, PathReport, PathSample, PathVerdict, StabilityClass,
    DEFAULT_K_MAX, DENSITY_FACTOR,
};
