#ifndef IRRIPLAN_IO_HPP
#define IRRIPLAN_IO_HPP

#include <string>

namespace irriplan {

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace irriplan

#endif
