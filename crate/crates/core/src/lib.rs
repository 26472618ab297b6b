pub mod arith;
pub mod catalog;
pub mod constructions;
pub mod criteria;
pub mod oracle;
pub mod permgrp;
