#include "makro/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace makro::ledger {

double& deposits_of(World& w, AgentRef a) {
    return a.kind == AgentRef::HouseholdKind ? w.households[a.id].deposits
                                             : w.firms[a.id].liquidity;
}

int bank_of(const World& w, AgentRef a) {
    return a.kind == AgentRef::HouseholdKind ? w.households[a.id].bank
                                             : w.firms[a.id].bank;
}

namespace {

void queue_obligation(World& w, int from_bank, int to_bank, double amount) {
    if (amount <= 0.0 || from_bank == to_bank) return;
    if (from_bank != kGovernment) w.banks[from_bank].settle_payable += amount;
    if (to_bank != kGovernment) w.banks[to_bank].settle_receivable += amount;
    w.obligations.push_back({from_bank, to_bank, amount});
}

}  // namespace

SettlementRecord transfer_deposit(World& w, AgentRef payer, AgentRef payee,
                                  double amount, double allowed_overdraft) {
    SettlementRecord rec;
    rec.amount = amount;
    if (amount == 0.0) return rec;
    double& from = deposits_of(w, payer);
    if (from + allowed_overdraft < amount) {
        rec.rejected = true;
        return rec;
    }
    const int bank_from = bank_of(w, payer);
    const int bank_to = bank_of(w, payee);

    if (from < amount && payer.kind == AgentRef::FirmKind) {
        draw_overdraft(w, payer.id, amount - from);
    }
    from -= amount;
    w.banks[bank_from].customer_deposits -= amount;
    deposits_of(w, payee) += amount;
    w.banks[bank_to].customer_deposits += amount;
    if (bank_from != bank_to) {
        rec.cross_bank = true;
        queue_obligation(w, bank_from, bank_to, amount);
    }
    return rec;
}

void government_pay(World& w, AgentRef payee, double amount) {
    if (amount <= 0.0) return;
    w.gov.liquidity -= amount;
    const int bank_to = bank_of(w, payee);
    deposits_of(w, payee) += amount;
    w.banks[bank_to].customer_deposits += amount;
    queue_obligation(w, kGovernment, bank_to, amount);
}

void pay_government(World& w, AgentRef payer, double amount) {
    if (amount <= 0.0) return;
    const int bank_from = bank_of(w, payer);
    deposits_of(w, payer) -= amount;
    w.banks[bank_from].customer_deposits -= amount;
    w.gov.liquidity += amount;
    w.gov.tax_receipts_period += amount;
    queue_obligation(w, bank_from, kGovernment, amount);
}

void switch_deposit_bank(World& w, AgentRef agent, int new_bank) {
    const int old_bank = bank_of(w, agent);
    if (old_bank == new_bank) return;
    const double balance = deposits_of(w, agent);
    w.banks[old_bank].customer_deposits -= balance;
    w.banks[new_bank].customer_deposits += balance;
    queue_obligation(w, old_bank, new_bank, balance);
    if (agent.kind == AgentRef::HouseholdKind) {
        w.households[agent.id].bank = new_bank;
    } else {
        w.firms[agent.id].bank = new_bank;
    }
}

void book_loan(World& w, int bank_id, int firm_id, double principal, double rate,
               int duration) {
    Firm& f = w.firms[firm_id];
    Bank& lender = w.banks[bank_id];
    f.loans.push_back({bank_id, firm_id, principal, principal, rate, duration, duration});
    f.liquidity += principal;
    w.banks[f.bank].customer_deposits += principal;
    lender.business_loans += principal;
    queue_obligation(w, bank_id, f.bank, principal);
}

void draw_overdraft(World& w, int firm_id, double amount) {
    if (amount <= 0.0) return;
    Firm& f = w.firms[firm_id];
    f.overdraft += amount;
    f.liquidity += amount;
    Bank& b = w.banks[f.bank];
    b.overdraft_assets += amount;
    b.customer_deposits += amount;
}

void repay_overdraft(World& w, int firm_id, double amount) {
    Firm& f = w.firms[firm_id];
    const double pay = std::min({amount, f.overdraft, f.liquidity});
    if (pay <= 0.0) return;
    f.overdraft -= pay;
    f.liquidity -= pay;
    Bank& b = w.banks[f.bank];
    b.overdraft_assets -= pay;
    b.customer_deposits -= pay;
}

namespace {

/// Pays `amount` from the firm's account to a lender bank's own book.
/// The firm's bank owes the lender reserves unless they coincide.
void firm_pays_bank(World& w, int firm_id, int lender_id, double amount) {
    if (amount <= 0.0) return;
    Firm& f = w.firms[firm_id];
    f.liquidity -= amount;
    w.banks[f.bank].customer_deposits -= amount;
    if (f.bank != lender_id) {
        queue_obligation(w, f.bank, lender_id, amount);
    }
}

}  // namespace

AmortizationResult amortize_loans(World& w, int firm_id) {
    AmortizationResult res;
    Firm& f = w.firms[firm_id];
    double interest_due = 0.0;
    double principal_due = 0.0;
    for (Loan& loan : f.loans) {
        if (loan.principal <= 0.0) continue;  // overdue loans keep being serviced
        const double interest = loan.rate * loan.original_principal;
        const double principal =
            std::min(loan.principal, loan.original_principal / loan.duration);
        interest_due += interest;
        principal_due += principal;

        double available = f.liquidity;
        const double pay_interest = std::min(interest, std::max(available, 0.0));
        available -= pay_interest;
        const double pay_principal = std::min(principal, std::max(available, 0.0));
        if (pay_interest + pay_principal < interest + principal - 1e-12) {
            res.arrears = true;
        }
        Bank& lender = w.banks[loan.lender];
        firm_pays_bank(w, firm_id, loan.lender, pay_interest + pay_principal);
        lender.equity += pay_interest;
        lender.period_profit += pay_interest;
        lender.business_loans -= pay_principal;
        loan.principal -= pay_principal;
        loan.remaining -= 1;
        f.period_interest += pay_interest;
        res.interest_paid += pay_interest;
        res.principal_paid += pay_principal;
    }
    // expired but unpaid loans stay on the book as overdue principal
    std::erase_if(f.loans, [](const Loan& l) { return l.principal <= 1e-12; });
    f.interest_due_last = interest_due;
    f.principal_due_last = principal_due;
    f.interest_pressure =
        principal_due > 0.0 ? interest_due / principal_due : 0.0;
    return res;
}

double charge_overdraft_interest(World& w, int firm_id) {
    Firm& f = w.firms[firm_id];
    if (f.overdraft <= 0.0) return 0.0;
    Bank& b = w.banks[f.bank];
    const double interest =
        std::min(w.loan_offer_rate(b) * f.overdraft, std::max(f.liquidity, 0.0));
    if (interest <= 0.0) return 0.0;
    f.liquidity -= interest;
    b.customer_deposits -= interest;
    b.equity += interest;
    b.period_profit += interest;
    f.period_interest += interest;
    return interest;
}

void credit_deposit_interest(World& w) {
    for (auto& h : w.households) {
        Bank& b = w.banks[h.bank];
        const double i = w.deposit_rate(b) * h.deposits;
        h.deposits += i;
        b.customer_deposits += i;
        b.equity -= i;
        b.period_profit -= i;
    }
    for (auto& f : w.firms) {
        Bank& b = w.banks[f.bank];
        const double i = w.deposit_rate(b) * std::max(f.liquidity, 0.0);
        f.liquidity += i;
        b.customer_deposits += i;
        b.equity -= i;
        b.period_profit -= i;
    }
}

WriteOffResult write_off(World& w, int firm_id) {
    WriteOffResult res;
    Firm& f = w.firms[firm_id];
    double outstanding = f.overdraft;
    for (const Loan& l : f.loans) outstanding += l.principal;
    if (outstanding <= 0.0) return res;

    const double recovered_total = std::clamp(f.liquidity, 0.0, outstanding);

    // overdraft share first (it sits at the firm's own bank)
    {
        Bank& b = w.banks[f.bank];
        const double share = recovered_total * (f.overdraft / outstanding);
        if (f.overdraft > 0.0) {
            f.liquidity -= share;
            b.customer_deposits -= share;
            b.equity -= (f.overdraft - share);
            b.period_profit -= (f.overdraft - share);
            b.overdraft_assets -= f.overdraft;
            res.principal_lost += f.overdraft - share;
            res.recovered += share;
            f.overdraft = 0.0;
        }
    }
    for (Loan& loan : f.loans) {
        if (loan.principal <= 0.0) continue;
        Bank& lender = w.banks[loan.lender];
        const double share = recovered_total * (loan.principal / outstanding);
        firm_pays_bank(w, firm_id, loan.lender, share);
        lender.business_loans -= loan.principal;
        lender.equity -= (loan.principal - share);
        lender.period_profit -= (loan.principal - share);
        res.principal_lost += loan.principal - share;
        res.recovered += share;
        ++res.loans_terminated;
        loan.principal = 0.0;
    }
    f.loans.clear();
    return res;
}

double InvariantReport::max_abs() const {
    return std::max({std::fabs(deposit_gap), std::fabs(reserve_gap),
                     std::fabs(loan_gap), std::fabs(worst_balance_gap)});
}

InvariantReport check_invariants(const World& w) {
    InvariantReport rep;
    double agent_balances = 0.0;
    for (const auto& h : w.households) agent_balances += h.deposits;
    for (const auto& f : w.firms) agent_balances += f.liquidity;
    double bank_deposits = 0.0, reserves = 0.0, loans = 0.0, overdrafts = 0.0;
    for (const auto& b : w.banks) {
        bank_deposits += b.customer_deposits;
        reserves += b.reserves + b.deposit_facility;
        loans += b.business_loans;
        overdrafts += b.overdraft_assets;
        const double gap = b.balance_gap();
        if (std::fabs(gap) > std::fabs(rep.worst_balance_gap)) {
            rep.worst_balance_gap = gap;
        }
    }
    double firm_loans = 0.0, firm_overdrafts = 0.0;
    for (const auto& f : w.firms) {
        firm_overdrafts += f.overdraft;
        for (const auto& l : f.loans) firm_loans += l.principal;
    }
    rep.deposit_gap = bank_deposits - agent_balances;
    rep.reserve_gap = reserves - w.cb.reserves_outstanding;
    rep.loan_gap = (loans - firm_loans) + (overdrafts - firm_overdrafts);
    return rep;
}

void write_balance_sheet_csv(const World& w, const std::string& path) {
    std::ofstream out(path);
    out << "agent,id,deposits,inventory,reserves,facility,business_loans,overdraft,"
           "ib_receivable,ib_payable,settle_receivable,settle_payable,cb_credit,"
           "customer_deposits,loans_outstanding,equity\n";
    char buf[512];
    for (std::size_t i = 0; i < w.households.size(); ++i) {
        const auto& h = w.households[i];
        std::snprintf(buf, sizeof buf,
                      "household,%zu,%.17g,0,0,0,0,0,0,0,0,0,0,0,0,%.17g\n", i,
                      h.deposits, h.deposits);
        out << buf;
    }
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        const auto& f = w.firms[i];
        double loans = 0.0;
        for (const auto& l : f.loans) loans += l.principal;
        const double equity =
            f.liquidity + f.inventory * f.price - loans - f.overdraft;
        std::snprintf(buf, sizeof buf,
                      "firm,%zu,%.17g,%.17g,0,0,0,%.17g,0,0,0,0,0,0,%.17g,%.17g\n",
                      i, f.liquidity, f.inventory, f.overdraft, loans, equity);
        out << buf;
    }
    for (std::size_t i = 0; i < w.banks.size(); ++i) {
        const auto& b = w.banks[i];
        std::snprintf(
            buf, sizeof buf,
            "bank,%zu,0,0,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
            "%.17g,0,%.17g\n",
            i, b.reserves, b.deposit_facility, b.business_loans, b.overdraft_assets,
            b.ib_receivable, b.ib_payable, b.settle_receivable, b.settle_payable,
            b.cb_credit_total(), b.customer_deposits, b.equity);
        out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "central_bank,0,0,0,%.17g,0,0,0,0,0,0,0,0,0,0,0\n",
                  w.cb.reserves_outstanding);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "government,0,%.17g,0,0,0,0,0,0,0,0,0,0,0,0,%.17g\n",
                  w.gov.liquidity, w.gov.liquidity - w.gov.public_debt);
    out << buf;
}

}  // namespace makro::ledger
