#pragma once
#include <stdexcept>
#include <string>

namespace runup {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

[[noreturn]] inline void numerical_error(const std::string& msg) {
    throw std::runtime_error(msg);
}

}
