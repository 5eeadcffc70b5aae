#ifndef RELAD_ERRORS_HPP
#define RELAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relad {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainTooLarge : public Error {
public:
    using Error::Error;
};

class NodeNotInDomain : public Error {
public:
    using Error::Error;
};

class HueUnsupported : public Error {
public:
    using Error::Error;
};

class NotReversible : public Error {
public:
    using Error::Error;
};

class OverlappingGroups : public Error {
public:
    using Error::Error;
};

class OverlappingPartition : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class MissingNormalizer : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class EdgeEndpointsMissing : public Error {
public:
    using Error::Error;
};

class TableIncomplete : public Error {
public:
    using Error::Error;
};

class DuplicateFeatureId : public Error {
public:
    using Error::Error;
};

class ChannelOutOfRange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace relad

#endif  // RELAD_ERRORS_HPP
