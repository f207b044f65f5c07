//! Online goal recognition from precomputed trajectory banks.
//!
//! The expensive work (geometric planning, via-point optimization, top-k
//! plan enumeration) happens offline, once per goal hypothesis. The online
//! phase scores incoming observations against the precomputed bank with a
//! closed-form likelihood and never calls a planner.
//!
//! Continuous pipeline: [`gridmap`] → [`geoplanner`] → [`viaopt`] →
//! [`quintic`] → [`recognizer`], with ground-truth observation streams from
//! [`sim`]. Discrete pipeline: [`strips`] → [`recognizer`]. The experiment
//! harness and metrics live in [`experiment`].

pub mod experiment;
pub mod geoplanner;
pub mod gridmap;
pub mod instrument;
pub mod quintic;
pub mod recognizer;
pub mod sim;
pub mod strips;
pub mod viaopt;

/// Planar point or vector in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, other: Vec2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}
