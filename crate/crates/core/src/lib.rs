pub mod algebra;
pub mod catalog;
pub mod chain;
pub mod driver;
pub mod error;
pub mod format;
pub mod fp;
pub mod group;
pub mod perm;
pub mod pf;
pub mod report;
pub mod series;
pub mod small;
pub mod theorems;
pub mod verdict;
