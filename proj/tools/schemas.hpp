#pragma once

#include <map>
#include <string>

/// Shipped JSON schemas by name (file stem), embedded at build time.
const std::map<std::string, std::string>& schema_texts();
