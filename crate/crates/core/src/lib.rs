pub mod assemble;
pub mod exact;
pub mod holproj;
pub mod level2;
pub mod linalg;
pub mod numeric;
pub mod qexp;
pub mod quad;
pub mod reference;
pub mod report;
pub mod theta;
pub mod verify;
