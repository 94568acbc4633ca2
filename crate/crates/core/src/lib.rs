pub mod corpus;
pub mod cyclotomic;
pub mod lr_oracle;
pub mod partition;
pub mod schur;
pub mod verlinde;
