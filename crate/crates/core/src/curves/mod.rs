//! Locally convex curves in `Spin4`: curvature profiles, integration and
//! Frenet lifts, singular sets, itineraries, the transversal family through
//! `[bacb]` and the normal form near `η`.

pub mod frame;
pub mod frenet;
pub mod integrate;
pub mod itinerary;
pub mod normal_form;
pub mod poly;
pub mod profile;
pub mod singular;
pub mod transversal;

pub use frame::{canonical_sign, FrameCurve, MatrixCurve};
pub use frenet::frenet_lift;
pub use integrate::{integrate, CurveSample, CurveSampleRecord};
pub use itinerary::{is_convex, itinerary, ChainDefect, Itinerary, ItineraryOptions, ItineraryRecord};
pub use normal_form::{eta_normal_form, n2_curve, n2_initial, phi_map, v_map, Betas, NormalForm};
pub use profile::{random_profile, CurvatureProfile, Kappa, KappaSpec, ProfileSpec, RandomProfileOptions};
pub use singular::{singular_set, SingularOptions, SingularTime};
pub use transversal::{
    check_regions, q_polynomials, region_signs, scan_sphere, tangency_points, transversal_curve, transversal_itinerary,
    transversal_matrix, transversal_minors, RegionReport, ScanOptions, ScanRow, TransversalPoint,
};
