#ifndef ACTFD_MODEL_IO_HPP
#define ACTFD_MODEL_IO_HPP

// Line-oriented model files:
//
//   # comment
//   var <name> in <lo>..<hi>
//   var <name> in {v1,v2,...}
//   lin <c0> <a1>*<name1> <a2>*<name2> ... = 0
//   eq <a>*<x> = <b>*<y> + <c>
//   neq <x> <y> <c>                 x != y + c
//   alldistinct <name1> <name2> ...
//   label <name1> <name2> ...       required, exactly once

#include <actfd/model.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace actfd
{
    struct SourceLoc
    {
        int line = 0;
        int column = 0;
    };

    class ParseError : public std::runtime_error
    {
    public:
        ParseError(SourceLoc where, const std::string & what);

        SourceLoc where;
    };

    struct ModelFile
    {
        Model model;
        std::vector<SourceLoc> var_locations;
        std::vector<SourceLoc> constraint_locations;
    };

    [[nodiscard]] auto parse_model(std::string_view text) -> ModelFile;
    [[nodiscard]] auto load_model_file(const std::string & path) -> ModelFile;

    auto print_model(std::ostream & out, const Model & m) -> void;
    [[nodiscard]] auto print_model(const Model & m) -> std::string;
}

#endif
