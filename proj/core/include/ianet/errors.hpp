#pragma once

#include <stdexcept>
#include <string>

namespace ianet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input length is not divisible by the pipeline's composed temporal denominator.
class IndivisibleInput : public Error {
public:
    using Error::Error;
};

/// Tensor shape does not match what a block or operation expects.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A block range given to run_pipeline selects no blocks.
class EmptyRange : public Error {
public:
    using Error::Error;
};

/// Serialized tensor stream is too short to contain a header, or the header is invalid.
class MalformedHeader : public Error {
public:
    using Error::Error;
};

/// Serialized tensor payload length disagrees with the header.
class TruncatedPayload : public Error {
public:
    using Error::Error;
};

/// Partition planning was asked to place VNFs on an empty node chain.
class EmptyChain : public Error {
public:
    using Error::Error;
};

/// A partition plan is inconsistent with the scenario's node chain or pipeline.
class PlanChainMismatch : public Error {
public:
    using Error::Error;
};

/// measured_rates needs the store-and-forward baseline byte count, which is absent.
class MissingBaseline : public Error {
public:
    using Error::Error;
};

/// Feature matrices passed to scoring have different dimensions.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// AUC requires at least one sample of each label.
class DegenerateLabels : public Error {
public:
    using Error::Error;
};

/// A config file failed to parse or validate.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ianet
