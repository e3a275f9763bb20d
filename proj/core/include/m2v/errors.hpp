#ifndef M2V_ERRORS_HPP
#define M2V_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace m2v {

// Error categories map 1:1 to CLI exit codes (see tools/).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data violates a contract (duplicate ids, short sequences, ...).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace m2v

#endif  // M2V_ERRORS_HPP
