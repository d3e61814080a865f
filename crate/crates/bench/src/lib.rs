//! Fixtures shared by the benchmarks.

use msrcpsp_core::generate::{random_instance, GeneratorConfig};
use msrcpsp_core::ProjectInstance;

/// A project with the shape of the 100-task, 10-resource benchmark
/// instances: 27 precedence relations, 9 skill types.
pub fn hundred_task_instance(seed: u64) -> ProjectInstance {
    random_instance(&GeneratorConfig::benchmark(100, 10, 27, 9), seed)
}

/// 200 tasks, 20 resources, 54 relations, 15 skill types.
pub fn two_hundred_task_instance(seed: u64) -> ProjectInstance {
    random_instance(&GeneratorConfig::benchmark(200, 20, 54, 15), seed)
}
