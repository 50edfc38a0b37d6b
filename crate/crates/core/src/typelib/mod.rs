//! Types of conjugacy classes of tuples in products of general linear
//! groups over `F_q`: canonical keys, realisations, class counts and sizes,
//! and intersection counts of classes with parabolic subgroups and with the
//! image of the residue map on module automorphisms.

mod classes;
mod counting;
mod flags;
mod partition;
mod types;

pub use classes::{brute_force_classes, classes_of_gl, extend_class, invertible_irreducibles, types_over};
pub use counting::{
    class_count_of_type, class_size, flag_count, gaussian_binomial, invertible_realisation_count, pretype_aut_order,
    realisation_count,
};
pub use flags::{
    aut_image_intersection, extensions_of_type, flag_fix_count, parabolic_intersection,
    projected_parabolic_intersection,
};
pub use partition::Partition;
pub use types::{class_of_tuple, factor, jordan_data, type_of_tuple, ClassKey, Column, PreType, TypeKey};
