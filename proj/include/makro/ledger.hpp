#pragma once

#include <string>
#include <vector>

#include "makro/world.hpp"

namespace makro::ledger {

/// Payment endpoints for deposit transfers.
struct AgentRef {
    enum Kind { HouseholdKind, FirmKind } kind;
    int id;
};

struct SettlementRecord {
    double amount = 0.0;
    bool cross_bank = false;
    bool rejected = false;
};

// --- deposit-money primitives -------------------------------------------

double& deposits_of(World& w, AgentRef a);
int bank_of(const World& w, AgentRef a);

/// Moves bank deposits between two non-bank agents. A cross-bank transfer
/// queues a reserve obligation for the next settlement tick. Firms may dip
/// into `allowed_overdraft` beyond their balance; otherwise an insufficient
/// balance rejects the transfer (the caller decides the fallback).
SettlementRecord transfer_deposit(World& w, AgentRef payer, AgentRef payee,
                                  double amount, double allowed_overdraft = 0.0);

/// Credits an agent account from the government (benefits, bailouts are
/// handled separately). Settles against the government account at the CB.
void government_pay(World& w, AgentRef payee, double amount);

/// Debits an agent account towards the government (taxes).
void pay_government(World& w, AgentRef payer, double amount);

/// Moves an agent's full balance to a new bank.
void switch_deposit_bank(World& w, AgentRef agent, int new_bank);

/// Books a freshly granted loan: deposits and the loan appear together
/// (endogenous money). Returns the loan index in the firm's book.
void book_loan(World& w, int bank_id, int firm_id, double principal, double rate,
               int duration);

/// Draws on the overdraft facility at the firm's own bank.
void draw_overdraft(World& w, int firm_id, double amount);
void repay_overdraft(World& w, int firm_id, double amount);

// --- periodic accounting -------------------------------------------------

struct AmortizationResult {
    double interest_paid = 0.0;
    double principal_paid = 0.0;
    bool arrears = false;
};

/// One period of redemption across all loans of one firm; equal per-period
/// redemption (rate + 1/duration) * original principal. Inability to pay
/// raises the arrears flag feeding the interest-pressure variable.
AmortizationResult amortize_loans(World& w, int firm_id);

/// Charges one period of overdraft interest at the bank's loan offer rate.
double charge_overdraft_interest(World& w, int firm_id);

/// Credits one period of deposit interest to all customers of every bank.
void credit_deposit_interest(World& w);

struct WriteOffResult {
    double principal_lost = 0.0;  // net equity impact across banks
    double recovered = 0.0;
    int loans_terminated = 0;
};

/// Terminates all credit lines of a bankrupt firm. Remaining liquidity is
/// seized and distributed pro-rata across lenders by outstanding principal;
/// the shortfall burdens bank equity.
WriteOffResult write_off(World& w, int firm_id);

// --- invariants -----------------------------------------------------------

struct InvariantReport {
    double deposit_gap = 0.0;   // sum bank deposit liabilities - sum agent balances
    double reserve_gap = 0.0;   // sum reserves + facilities - CB outstanding
    double loan_gap = 0.0;      // bank loan assets - firm loan liabilities
    double worst_balance_gap = 0.0; // max |assets - liabilities - equity| over banks
    double max_abs() const;
};

InvariantReport check_invariants(const World& w);

/// One row per agent, columns per the balance-sheet structure.
void write_balance_sheet_csv(const World& w, const std::string& path);

}  // namespace makro::ledger
