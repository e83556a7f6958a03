#ifndef LOOPK_ERRORS_HPP
#define LOOPK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loopk
{

// Invalid input or violated precondition.
class invalid_input : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A structural computation failed (non-nilpotent ad, Jacobi failure, ...).
class math_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Not enough t-adic precision to certify a result.
class precision_exhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An exhaustive search would exceed its configured size limits.
class budget_exceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input; the message carries line/column information.
class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string &what, int line = 0, int col = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + what : what),
          m_line(line), m_col(col)
    {
    }
    int line() const
    {
        return m_line;
    }
    int column() const
    {
        return m_col;
    }

private:
    int m_line, m_col;
};

} // namespace loopk

#endif
