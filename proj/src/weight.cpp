#include "lcqp/weight.hpp"

#include <string>

namespace lcqp
{

std::string_view to_string(Backend backend)
{
    switch (backend) {
    case Backend::F64: return "f64";
    case Backend::LogDomain: return "logdomain";
    case Backend::Phased: return "phased";
    }
    return "?";
}

Backend parse_backend(std::string_view text)
{
    if (text == "f64") return Backend::F64;
    if (text == "logdomain") return Backend::LogDomain;
    if (text == "phased") return Backend::Phased;
    throw ConfigError("unknown backend '" + std::string(text) + "' (expected f64|logdomain|phased)");
}

} // namespace lcqp
